#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pgaram {

// Raised by the program, instruction, memory-file and check-spec parsers.
// line/column are 1-based; 0 means "no location available".
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& message, std::size_t line = 0,
                      std::size_t column = 0)
      : std::runtime_error(message), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace pgaram
