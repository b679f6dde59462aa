#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pgaram {

// Unbounded natural number. All register indices, immediates and jump
// offsets are naturals; operations here never produce negative values
// (subtraction is proper subtraction, division is zero-totalized).
using Nat = boost::multiprecision::cpp_int;

using Bit = bool;

/// A finite bit string. Index 0 is the numerically least significant bit,
/// so the textual form "101" denotes 1 + 0*2 + 1*4 = 5.
///
/// The empty string and "0" are distinct values: an empty register counts
/// as unused, while "0" is the number zero occupying one bit. High-index
/// zeros (the leading zeros of the numeral) are significant for length
/// and for the logical/shift operations, even though they do not affect
/// the numeric reading.
class BitString {
public:
  BitString() = default;
  explicit BitString(std::vector<bool> bits) : bits_(std::move(bits)) {}

  /// Parses a string over {0,1}; the first character is bit 0. Throws
  /// ParseError on any other character. "" yields the empty bit string.
  static BitString from_text(std::string_view text);

  std::string text() const;

  bool empty() const { return bits_.empty(); }
  std::size_t size() const { return bits_.size(); }
  bool bit(std::size_t i) const { return bits_[i]; }
  const std::vector<bool>& bits() const { return bits_; }

  void append(bool b) { bits_.push_back(b); }

  bool operator==(const BitString& other) const = default;

private:
  std::vector<bool> bits_;
};

/// Natural number to bit string, least significant bit first. The result
/// never has leading zeros and is never empty: ntob(0) == "0".
BitString ntob(const Nat& n);

/// Bit string to natural number. Tolerates leading zeros; bton("") == 0.
Nat bton(const BitString& w);

/// Length of ntob(n) without materializing it: 1 for 0, floor(log2 n)+1
/// otherwise. This is the len(i) used by the cost and space measures.
std::size_t nat_bit_length(const Nat& n);

// Arithmetic on bit strings through their numeric reading. Operands may
// carry leading zeros; results never do. "monus" is proper subtraction
// (truncating at zero) and "divz" is Euclidean division with n/0 = 0.
BitString add(const BitString& w1, const BitString& w2);
BitString monus(const BitString& w1, const BitString& w2);
BitString mul(const BitString& w1, const BitString& w2);
BitString divz(const BitString& w1, const BitString& w2);

enum class ArithOp { Add, Monus, Mul, DivZ };
BitString arith(ArithOp op, const BitString& w1, const BitString& w2);

// Pointwise logical operations. A shorter operand is read as if padded
// with leading zeros, and the padding is materialized: the result always
// has length max(len(w1), len(w2)). bit_not is the length-preserving
// complement. All of them map two empty operands to the empty string.
BitString bit_and(const BitString& w1, const BitString& w2);
BitString bit_or(const BitString& w1, const BitString& w2);
BitString bit_xor(const BitString& w1, const BitString& w2);
BitString bit_not(const BitString& w);

enum class BitwiseOp { And, Or, Xor };
BitString bitwise(BitwiseOp op, const BitString& w1, const BitString& w2);

// Shifts and rotates; all map the empty string to itself.
//   shl prepends a 0 at the least significant end (doubles the value),
//   shr drops the least significant bit (halves the value),
//   rol moves the last (most significant) bit to the front,
//   ror moves the first (least significant) bit to the back.
BitString shl(const BitString& w);
BitString shr(const BitString& w);
BitString rol(const BitString& w);
BitString ror(const BitString& w);

enum class ShiftOp { Shl, Shr, Rol, Ror };
BitString shift(ShiftOp op, const BitString& w);

}  // namespace pgaram
