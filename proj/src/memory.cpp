#include "pgaram/memory.hpp"

#include <fstream>
#include <sstream>

#include "pgaram/errors.hpp"

namespace pgaram {

namespace {
const BitString kEmpty;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}
}  // namespace

const BitString& MemoryState::read(const Nat& i) const {
  auto it = registers_.find(i);
  return it == registers_.end() ? kEmpty : it->second;
}

MemoryState MemoryState::write(const Nat& i, BitString w) const {
  MemoryState next = *this;
  if (w.empty()) {
    next.registers_.erase(i);
  } else {
    next.registers_[i] = std::move(w);
  }
  return next;
}

MemoryState load_memory(std::istream& in) {
  MemoryState state;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    std::string_view trimmed(line.data() + begin, end - begin + 1);
    if (trimmed.front() == '#') continue;
    std::size_t eq = trimmed.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected INDEX=BITS", lineno, begin + 1);
    std::string_view index_text = trimmed.substr(0, eq);
    std::string_view bits_text = trimmed.substr(eq + 1);
    if (!all_digits(index_text))
      throw ParseError("invalid register index '" + std::string(index_text) +
                           "'",
                       lineno, begin + 1);
    Nat index{std::string(index_text)};
    BitString bits;
    try {
      bits = BitString::from_text(bits_text);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno, begin + eq + 2);
    }
    state = state.write(index, std::move(bits));
  }
  return state;
}

MemoryState load_memory_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open memory file '" + path + "'");
  return load_memory(in);
}

void save_memory(std::ostream& out, const MemoryState& state) {
  for (const auto& [index, bits] : state.registers())
    out << index.str() << '=' << bits.text() << '\n';
}

std::string memory_text(const MemoryState& state) {
  std::ostringstream out;
  save_memory(out, state);
  return out.str();
}

}  // namespace pgaram
