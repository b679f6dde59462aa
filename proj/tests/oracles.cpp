#include "oracles.hpp"

#include <stdexcept>

namespace oracles {

namespace {

std::vector<PrimitiveInstruction> tail_of(
    const std::vector<PrimitiveInstruction>& v) {
  return std::vector<PrimitiveInstruction>(v.begin() + 1, v.end());
}

std::vector<PrimitiveInstruction> with_jump_head(
    Nat offset, std::vector<PrimitiveInstruction> rest) {
  rest.insert(rest.begin(), PrimitiveInstruction::jump(std::move(offset)));
  return rest;
}

}  // namespace

FiniteThread::Ptr te_oracle(const std::vector<PrimitiveInstruction>& body) {
  if (body.empty())
    throw std::invalid_argument("instruction sequences are non-empty");
  const PrimitiveInstruction& u = body.front();
  const bool last = body.size() == 1;
  switch (u.kind()) {
    case PrimitiveInstruction::Kind::Plain: {
      const FiniteThread::Ptr tail =
          last ? FiniteThread::dead() : te_oracle(tail_of(body));
      return FiniteThread::branch(Action::of(u.basic()), tail, tail);
    }
    case PrimitiveInstruction::Kind::PosTest: {
      if (last)
        return FiniteThread::branch(Action::of(u.basic()),
                                    FiniteThread::dead(),
                                    FiniteThread::dead());
      return FiniteThread::branch(Action::of(u.basic()),
                                  te_oracle(tail_of(body)),
                                  te_oracle(with_jump_head(2, tail_of(body))));
    }
    case PrimitiveInstruction::Kind::NegTest: {
      if (last)
        return FiniteThread::branch(Action::of(u.basic()),
                                    FiniteThread::dead(),
                                    FiniteThread::dead());
      return FiniteThread::branch(Action::of(u.basic()),
                                  te_oracle(with_jump_head(2, tail_of(body))),
                                  te_oracle(tail_of(body)));
    }
    case PrimitiveInstruction::Kind::Jump: {
      const Nat& l = u.jump_offset();
      if (last) return FiniteThread::dead();
      if (l == 0) return FiniteThread::dead();
      if (l == 1) return te_oracle(tail_of(body));
      if (body.size() == 2) return FiniteThread::dead();
      std::vector<PrimitiveInstruction> rest = tail_of(body);
      rest.erase(rest.begin());
      return te_oracle(with_jump_head(l - 1, std::move(rest)));
    }
    case PrimitiveInstruction::Kind::Halt:
      return FiniteThread::stop();
  }
  throw std::logic_error("unreachable");
}

FiniteThread::Ptr use_oracle(const FiniteThread::Ptr& t, const RamMemory& m) {
  switch (t->kind()) {
    case NodeKind::Stop: return FiniteThread::stop();
    case NodeKind::Dead: return FiniteThread::dead();
    case NodeKind::Branch: {
      if (t->action().is_tau()) {
        const FiniteThread::Ptr inner = use_oracle(t->then_branch(), m);
        return FiniteThread::branch(Action::internal(), inner, inner);
      }
      if (!m.is_operative()) {
        return FiniteThread::branch(Action::internal(), FiniteThread::dead(),
                                    FiniteThread::dead());
      }
      const StepResult stepped = t->action().basic().execute(m.state());
      const FiniteThread::Ptr inner = use_oracle(
          stepped.reply ? t->then_branch() : t->else_branch(),
          RamMemory::operative(stepped.state));
      return FiniteThread::branch(Action::internal(), inner, inner);
    }
  }
  throw std::logic_error("unreachable");
}

RamMemory apply_oracle(const FiniteThread::Ptr& t, const RamMemory& m) {
  switch (t->kind()) {
    case NodeKind::Stop: return m;
    case NodeKind::Dead: return RamMemory::inoperative();
    case NodeKind::Branch: {
      if (t->action().is_tau()) return apply_oracle(t->then_branch(), m);
      if (!m.is_operative()) return RamMemory::inoperative();
      const StepResult stepped = t->action().basic().execute(m.state());
      return apply_oracle(stepped.reply ? t->then_branch() : t->else_branch(),
                          RamMemory::operative(stepped.state));
    }
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Schoolbook naturals

namespace {
void big_trim(BigNat& n) {
  while (!n.empty() && n.back() == 0) n.pop_back();
}
}  // namespace

BigNat big_from_bits(const BitString& w) {
  BigNat n;
  n.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) n.push_back(w.bit(i) ? 1 : 0);
  big_trim(n);
  return n;
}

BitString big_to_shortest_bits(const BigNat& n) {
  BitString w;
  if (n.empty()) {
    w.append(false);
    return w;
  }
  for (int b : n) w.append(b != 0);
  return w;
}

BigNat big_from_u64(std::uint64_t n) {
  BigNat out;
  while (n != 0) {
    out.push_back(static_cast<int>(n & 1));
    n >>= 1;
  }
  return out;
}

BigNat big_add(const BigNat& a, const BigNat& b) {
  BigNat out;
  int carry = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()) || carry; ++i) {
    int sum = carry;
    if (i < a.size()) sum += a[i];
    if (i < b.size()) sum += b[i];
    out.push_back(sum & 1);
    carry = sum >> 1;
  }
  big_trim(out);
  return out;
}

BigNat big_monus(const BigNat& a, const BigNat& b) {
  if (big_cmp(a, b) <= 0) return {};  // proper subtraction truncates at zero
  BigNat out;
  int borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int diff = a[i] - borrow - (i < b.size() ? b[i] : 0);
    borrow = 0;
    if (diff < 0) {
      diff += 2;
      borrow = 1;
    }
    out.push_back(diff);
  }
  big_trim(out);
  return out;
}

BigNat big_mul(const BigNat& a, const BigNat& b) {
  BigNat out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] == 0) continue;
    BigNat shifted(i, 0);
    shifted.insert(shifted.end(), a.begin(), a.end());
    out = big_add(out, shifted);
  }
  return out;
}

int big_cmp(const BigNat& a, const BigNat& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

BigNat big_divz(const BigNat& a, const BigNat& b) {
  if (b.empty()) return {};
  BigNat quotient(a.size(), 0);
  BigNat remainder;
  for (std::size_t i = a.size(); i-- > 0;) {
    remainder.insert(remainder.begin(), a[i]);
    big_trim(remainder);
    if (big_cmp(remainder, b) >= 0) {
      remainder = big_monus(remainder, b);
      quotient[i] = 1;
    }
  }
  big_trim(quotient);
  return quotient;
}

// ---------------------------------------------------------------------------
// Independent run-cost recursion

namespace {

Nat oracle_nat_len(Nat n) {
  if (n == 0) return 1;
  Nat len = 0;
  while (n > 0) {
    ++len;
    n >>= 1;
  }
  return len;
}

Nat oracle_src_cost(const MemoryState& s, const Src& src) {
  switch (src.mode) {
    case SrcMode::Immediate:
      return oracle_nat_len(src.index);
    case SrcMode::Direct:
      return oracle_nat_len(src.index) + Nat(s.read(src.index).size());
    case SrcMode::Indirect: {
      const BitString& pointer = s.read(src.index);
      const BitString& pointee = s.read(bton(pointer));
      return oracle_nat_len(src.index) + Nat(pointer.size()) +
             Nat(pointee.size());
    }
  }
  return 0;
}

Nat oracle_instr_cost(const MemoryState& s, const SrramInstruction& i) {
  switch (i.op_class()) {
    case OpClass::Binary: {
      const Nat c1 = oracle_src_cost(s, i.src1());
      const Nat c2 = oracle_src_cost(s, i.src2());
      if (i.op() == Opcode::Mul || i.op() == Opcode::Div) return c1 * c2;
      return c1 > c2 ? c1 : c2;
    }
    case OpClass::Unary:
      return oracle_src_cost(s, i.src1());
    case OpClass::Compare: {
      const Nat c1 = oracle_src_cost(s, i.src1());
      const Nat c2 = oracle_src_cost(s, i.src2());
      return c1 > c2 ? c1 : c2;
    }
  }
  return 0;
}

}  // namespace

std::optional<Nat> cost_oracle(const RegularThread& t, const MemoryState& s,
                               std::uint64_t max_steps) {
  Nat total = 0;
  MemoryState state = s;
  std::size_t node_id = t.root();
  for (std::uint64_t step_count = 0;; ++step_count) {
    const RegularThread::Node& node = t.node(node_id);
    if (node.kind == NodeKind::Stop) return total;
    if (node.kind == NodeKind::Dead) return std::nullopt;
    if (step_count >= max_steps) return std::nullopt;
    if (node.action->is_tau()) {
      node_id = node.next_then;
      continue;
    }
    if (!node.action->basic().is_symbolic()) return std::nullopt;
    const SrramInstruction& instr = node.action->basic().instruction();
    total += oracle_instr_cost(state, instr);
    const StepResult stepped = step(instr, state);
    state = stepped.state;
    node_id = stepped.reply ? node.next_then : node.next_else;
  }
}

// ---------------------------------------------------------------------------
// Labeled classification corpus

std::vector<LabeledProgram> labeled_corpus() {
  auto all = [](bool srram, bool standard, bool successor) {
    return ProgramClass{srram, standard, successor};
  };
  return {
      {"(mov:1:0;!)*", all(true, true, true)},
      {"(mul:1:1:0;!)*", all(true, false, false)},
      {"mov:1:0;!", all(false, false, false)},  // missing repetition
      {"(add:1:#1:0;!)*", all(true, true, true)},
      {"(add:1:2:0;!)*", all(true, true, false)},
      {"(sub:1:#1:0;!)*", all(true, true, false)},
      {"(+eq:1:2;#3;mov:1:0;!)*", all(true, true, true)},
      {"(eq:1:2;!)*", all(false, false, false)},  // plain comparison
      {"(+mov:1:0;#2;!)*", all(false, false, false)},  // test on non-cmp
      {"(-eq:1:2;#2;!)*", all(false, false, false)},   // negative test
      {"(+eq:1:2;mov:1:0;!)*", all(false, false, false)},  // test, no jump
      {"(#0)*", all(true, true, true)},  // bare jump
      {"(#5;!)*", all(true, true, true)},
      {"(and:1:2:0;!)*", all(true, false, false)},
      {"(shl:1:0;!)*", all(true, false, false)},
      {"(div:1:2:0;!)*", all(true, false, false)},
      {"(not:1:0;mov:2:1;!)*", all(true, false, false)},
      {"(a;!)*", all(false, false, false)},  // opaque basic instruction
      {"(mov:1:0)*", all(true, true, true)},  // no termination unit needed
      {"(mov:1:0;+eq:0:1)*", all(false, false, false)},  // trailing test
      {"mov:1:0;(!;mov:1:0)*", all(true, true, true)},  // rotated body
      {"(+gt:1:#0;#0;sub:1:#1:1;#4)*", all(true, true, false)},
  };
}

}  // namespace oracles
