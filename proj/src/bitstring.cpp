#include "pgaram/bitstring.hpp"

#include <algorithm>

#include "pgaram/errors.hpp"

namespace pgaram {

BitString BitString::from_text(std::string_view text) {
  std::vector<bool> bits;
  bits.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '0') {
      bits.push_back(false);
    } else if (c == '1') {
      bits.push_back(true);
    } else {
      throw ParseError("invalid bit character '" + std::string(1, c) +
                       "' in bit string");
    }
  }
  return BitString(std::move(bits));
}

std::string BitString::text() const {
  std::string out;
  out.reserve(bits_.size());
  for (bool b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

BitString ntob(const Nat& n) {
  BitString w;
  if (n == 0) {
    w.append(false);
    return w;
  }
  Nat rest = n;
  while (rest > 0) {
    w.append((rest & 1) != 0);
    rest >>= 1;
  }
  return w;
}

Nat bton(const BitString& w) {
  Nat n = 0;
  for (std::size_t i = w.size(); i-- > 0;) {
    n <<= 1;
    if (w.bit(i)) n += 1;
  }
  return n;
}

std::size_t nat_bit_length(const Nat& n) {
  if (n == 0) return 1;
  return boost::multiprecision::msb(n) + 1;
}

BitString add(const BitString& w1, const BitString& w2) {
  return ntob(bton(w1) + bton(w2));
}

BitString monus(const BitString& w1, const BitString& w2) {
  const Nat a = bton(w1);
  const Nat b = bton(w2);
  return ntob(a > b ? Nat(a - b) : Nat(0));
}

BitString mul(const BitString& w1, const BitString& w2) {
  return ntob(bton(w1) * bton(w2));
}

BitString divz(const BitString& w1, const BitString& w2) {
  const Nat b = bton(w2);
  if (b == 0) return ntob(0);
  return ntob(bton(w1) / b);
}

BitString arith(ArithOp op, const BitString& w1, const BitString& w2) {
  switch (op) {
    case ArithOp::Add: return add(w1, w2);
    case ArithOp::Monus: return monus(w1, w2);
    case ArithOp::Mul: return mul(w1, w2);
    case ArithOp::DivZ: return divz(w1, w2);
  }
  return {};
}

namespace {

template <typename F>
BitString pointwise(const BitString& w1, const BitString& w2, F op) {
  const std::size_t n = std::max(w1.size(), w2.size());
  BitString out;
  for (std::size_t i = 0; i < n; ++i) {
    const bool b1 = i < w1.size() && w1.bit(i);
    const bool b2 = i < w2.size() && w2.bit(i);
    out.append(op(b1, b2));
  }
  return out;
}

}  // namespace

BitString bit_and(const BitString& w1, const BitString& w2) {
  return pointwise(w1, w2, [](bool a, bool b) { return a && b; });
}

BitString bit_or(const BitString& w1, const BitString& w2) {
  return pointwise(w1, w2, [](bool a, bool b) { return a || b; });
}

BitString bit_xor(const BitString& w1, const BitString& w2) {
  return pointwise(w1, w2, [](bool a, bool b) { return a != b; });
}

BitString bit_not(const BitString& w) {
  BitString out;
  for (std::size_t i = 0; i < w.size(); ++i) out.append(!w.bit(i));
  return out;
}

BitString bitwise(BitwiseOp op, const BitString& w1, const BitString& w2) {
  switch (op) {
    case BitwiseOp::And: return bit_and(w1, w2);
    case BitwiseOp::Or: return bit_or(w1, w2);
    case BitwiseOp::Xor: return bit_xor(w1, w2);
  }
  return {};
}

BitString shl(const BitString& w) {
  if (w.empty()) return w;
  BitString out;
  out.append(false);
  for (std::size_t i = 0; i < w.size(); ++i) out.append(w.bit(i));
  return out;
}

BitString shr(const BitString& w) {
  if (w.empty()) return w;
  BitString out;
  for (std::size_t i = 1; i < w.size(); ++i) out.append(w.bit(i));
  return out;
}

BitString rol(const BitString& w) {
  if (w.empty()) return w;
  BitString out;
  out.append(w.bit(w.size() - 1));
  for (std::size_t i = 0; i + 1 < w.size(); ++i) out.append(w.bit(i));
  return out;
}

BitString ror(const BitString& w) {
  if (w.empty()) return w;
  BitString out;
  for (std::size_t i = 1; i < w.size(); ++i) out.append(w.bit(i));
  out.append(w.bit(0));
  return out;
}

BitString shift(ShiftOp op, const BitString& w) {
  switch (op) {
    case ShiftOp::Shl: return shl(w);
    case ShiftOp::Shr: return shr(w);
    case ShiftOp::Rol: return rol(w);
    case ShiftOp::Ror: return ror(w);
  }
  return {};
}

}  // namespace pgaram
