#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "pgaram/bitstring.hpp"

namespace pgaram {

/// A RAM memory state: one bit-string register per natural number, all but
/// finitely many empty. Only non-empty registers are stored; writing the
/// empty string erases an entry, so two states are equal exactly when they
/// agree as functions. Values are persistent: write returns a new state.
class MemoryState {
public:
  MemoryState() = default;

  /// Content of register i; the empty string for absent registers.
  const BitString& read(const Nat& i) const;

  /// New state with register i set to w. Writing the empty string removes
  /// the register from the support.
  MemoryState write(const Nat& i, BitString w) const;

  const std::map<Nat, BitString>& registers() const { return registers_; }
  bool empty() const { return registers_.empty(); }

  bool operator==(const MemoryState& other) const = default;

private:
  std::map<Nat, BitString> registers_;
};

/// A RAM memory: either operative with a state, or inoperative (the state
/// is unavailable; every operation on it is absorbed). Default-constructed
/// memories are inoperative.
class RamMemory {
public:
  RamMemory() = default;

  static RamMemory operative(MemoryState state) {
    RamMemory m;
    m.state_ = std::move(state);
    return m;
  }
  static RamMemory inoperative() { return RamMemory(); }

  bool is_operative() const { return state_.has_value(); }
  const MemoryState& state() const { return *state_; }

  bool operator==(const RamMemory& other) const = default;

private:
  std::optional<MemoryState> state_;
};

// Memory file format: UTF-8 lines "INDEX=BITS" with INDEX decimal and BITS
// written least-significant-bit first over {0,1}. Absent registers are
// simply absent. Blank lines and lines starting with '#' are ignored; a
// later line for the same index overwrites an earlier one. An empty BITS
// field erases the register. save() round-trips bit-exactly.
MemoryState load_memory(std::istream& in);
MemoryState load_memory_file(const std::string& path);
void save_memory(std::ostream& out, const MemoryState& state);
std::string memory_text(const MemoryState& state);

}  // namespace pgaram
