#include "pgaram/srram.hpp"

#include <array>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "pgaram/errors.hpp"

namespace pgaram {

namespace {

struct OpInfo {
  Opcode op;
  std::string_view name;
  OpClass cls;
};

constexpr std::array<OpInfo, 15> kOps = {{
    {Opcode::Add, "add", OpClass::Binary},
    {Opcode::Sub, "sub", OpClass::Binary},
    {Opcode::Mul, "mul", OpClass::Binary},
    {Opcode::Div, "div", OpClass::Binary},
    {Opcode::And, "and", OpClass::Binary},
    {Opcode::Or, "or", OpClass::Binary},
    {Opcode::Xor, "xor", OpClass::Binary},
    {Opcode::Not, "not", OpClass::Unary},
    {Opcode::Shl, "shl", OpClass::Unary},
    {Opcode::Shr, "shr", OpClass::Unary},
    {Opcode::Rol, "rol", OpClass::Unary},
    {Opcode::Ror, "ror", OpClass::Unary},
    {Opcode::Mov, "mov", OpClass::Unary},
    {Opcode::Eq, "eq", OpClass::Compare},
    {Opcode::Gt, "gt", OpClass::Compare},
}};

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Nat parse_nat(std::string_view digits, std::string_view what) {
  if (!all_digits(digits))
    throw ParseError("malformed " + std::string(what) + " '" +
                     std::string(digits) + "'");
  return Nat(std::string(digits));
}

Src parse_src(std::string_view text) {
  if (text.empty()) throw ParseError("empty operand");
  if (text.front() == '#')
    return Src::imm(parse_nat(text.substr(1), "immediate"));
  if (text.front() == '@')
    return Src::ind(parse_nat(text.substr(1), "register number"));
  return Src::dir(parse_nat(text, "register number"));
}

Dst parse_dst(std::string_view text) {
  if (text.empty()) throw ParseError("empty operand");
  if (text.front() == '#')
    throw ParseError("immediate destination '" + std::string(text) +
                     "' not allowed");
  if (text.front() == '@')
    return Dst::ind(parse_nat(text.substr(1), "register number"));
  return Dst::dir(parse_nat(text, "register number"));
}

}  // namespace

OpClass opcode_class(Opcode op) {
  for (const auto& info : kOps)
    if (info.op == op) return info.cls;
  throw std::logic_error("unknown opcode");
}

std::string_view opcode_name(Opcode op) {
  for (const auto& info : kOps)
    if (info.op == op) return info.name;
  throw std::logic_error("unknown opcode");
}

std::optional<Opcode> opcode_from_name(std::string_view name) {
  for (const auto& info : kOps)
    if (info.name == name) return info.op;
  return std::nullopt;
}

std::string Src::text() const {
  switch (mode) {
    case SrcMode::Immediate: return "#" + index.str();
    case SrcMode::Direct: return index.str();
    case SrcMode::Indirect: return "@" + index.str();
  }
  return {};
}

std::string Dst::text() const {
  return mode == DstMode::Direct ? index.str() : "@" + index.str();
}

SrramInstruction SrramInstruction::binary(Opcode op, Src src1, Src src2,
                                          Dst dst) {
  if (opcode_class(op) != OpClass::Binary)
    throw std::invalid_argument("not a binary operation");
  return SrramInstruction(op, std::move(src1), std::move(src2),
                          std::move(dst));
}

SrramInstruction SrramInstruction::unary(Opcode op, Src src1, Dst dst) {
  if (opcode_class(op) != OpClass::Unary)
    throw std::invalid_argument("not a unary operation");
  return SrramInstruction(op, std::move(src1), std::nullopt, std::move(dst));
}

SrramInstruction SrramInstruction::compare(Opcode op, Src src1, Src src2) {
  if (opcode_class(op) != OpClass::Compare)
    throw std::invalid_argument("not a comparison operation");
  return SrramInstruction(op, std::move(src1), std::move(src2), std::nullopt);
}

std::string SrramInstruction::text() const {
  std::string out(opcode_name(op_));
  out += ':';
  out += src1_.text();
  switch (op_class()) {
    case OpClass::Binary:
      out += ':';
      out += src2_->text();
      out += ':';
      out += dst_->text();
      break;
    case OpClass::Unary:
      out += ':';
      out += dst_->text();
      break;
    case OpClass::Compare:
      out += ':';
      out += src2_->text();
      break;
  }
  return out;
}

SrramInstruction parse_instruction(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t colon = text.find(':', start);
    if (colon == std::string_view::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, colon - start));
    start = colon + 1;
  }
  auto op = opcode_from_name(parts[0]);
  if (!op)
    throw ParseError("unknown operation '" + std::string(parts[0]) + "'");
  const std::size_t want =
      opcode_class(*op) == OpClass::Binary ? 3 : 2;
  if (parts.size() - 1 != want)
    throw ParseError("'" + std::string(parts[0]) + "' expects " +
                     std::to_string(want) + " operands, got " +
                     std::to_string(parts.size() - 1));
  switch (opcode_class(*op)) {
    case OpClass::Binary:
      return SrramInstruction::binary(*op, parse_src(parts[1]),
                                      parse_src(parts[2]),
                                      parse_dst(parts[3]));
    case OpClass::Unary:
      return SrramInstruction::unary(*op, parse_src(parts[1]),
                                     parse_dst(parts[2]));
    case OpClass::Compare:
      return SrramInstruction::compare(*op, parse_src(parts[1]),
                                       parse_src(parts[2]));
  }
  throw std::logic_error("unreachable");
}

BitString src_value(const MemoryState& state, const Src& src) {
  switch (src.mode) {
    case SrcMode::Immediate: return ntob(src.index);
    case SrcMode::Direct: return state.read(src.index);
    case SrcMode::Indirect: return state.read(bton(state.read(src.index)));
  }
  return {};
}

Nat dst_register(const MemoryState& state, const Dst& dst) {
  return dst.mode == DstMode::Direct ? dst.index
                                     : bton(state.read(dst.index));
}

StepResult step(const SrramInstruction& instruction,
                const MemoryState& state) {
  switch (instruction.op_class()) {
    case OpClass::Binary: {
      const BitString v1 = src_value(state, instruction.src1());
      const BitString v2 = src_value(state, instruction.src2());
      BitString result;
      switch (instruction.op()) {
        case Opcode::Add: result = add(v1, v2); break;
        case Opcode::Sub: result = monus(v1, v2); break;
        case Opcode::Mul: result = mul(v1, v2); break;
        case Opcode::Div: result = divz(v1, v2); break;
        case Opcode::And: result = bit_and(v1, v2); break;
        case Opcode::Or: result = bit_or(v1, v2); break;
        case Opcode::Xor: result = bit_xor(v1, v2); break;
        default: throw std::logic_error("unreachable");
      }
      return {true, state.write(dst_register(state, instruction.dst()),
                                std::move(result))};
    }
    case OpClass::Unary: {
      const BitString v = src_value(state, instruction.src1());
      BitString result;
      switch (instruction.op()) {
        case Opcode::Not: result = bit_not(v); break;
        case Opcode::Shl: result = shl(v); break;
        case Opcode::Shr: result = shr(v); break;
        case Opcode::Rol: result = rol(v); break;
        case Opcode::Ror: result = ror(v); break;
        case Opcode::Mov: result = v; break;
        default: throw std::logic_error("unreachable");
      }
      return {true, state.write(dst_register(state, instruction.dst()),
                                std::move(result))};
    }
    case OpClass::Compare: {
      const Nat n1 = bton(src_value(state, instruction.src1()));
      const Nat n2 = bton(src_value(state, instruction.src2()));
      const Bit reply =
          instruction.op() == Opcode::Eq ? (n1 == n2) : (n1 > n2);
      return {reply, state};
    }
  }
  throw std::logic_error("unreachable");
}

StatePredicate always_one() {
  return [](const MemoryState&) { return true; };
}

StateTransformer identity_transform() {
  return [](const MemoryState& state) { return state; };
}

std::pair<StatePredicate, StateTransformer> instruction_semantics(
    const SrramInstruction& instruction) {
  if (instruction.is_comparison()) {
    StatePredicate p = [instruction](const MemoryState& state) {
      return step(instruction, state).reply;
    };
    return {std::move(p), identity_transform()};
  }
  StateTransformer q = [instruction](const MemoryState& state) {
    return step(instruction, state).state;
  };
  return {always_one(), std::move(q)};
}

namespace {

BitString random_bits(std::mt19937_64& rng, std::uint64_t max_len) {
  std::uniform_int_distribution<std::uint64_t> len_dist(0, max_len);
  const std::uint64_t len = len_dist(rng);
  BitString w;
  for (std::uint64_t i = 0; i < len; ++i) w.append((rng() & 1) != 0);
  return w;
}

MemoryState random_state(std::mt19937_64& rng, std::uint64_t window) {
  MemoryState state;
  for (std::uint64_t i = 0; i < window; ++i) {
    if ((rng() & 1) != 0) state = state.write(i, random_bits(rng, window));
  }
  return state;
}

// Registers whose content can change the reply of p at this state, found
// by trying a handful of perturbations per register.
std::vector<Nat> reply_relevant_registers(const StatePredicate& p,
                                          const MemoryState& state,
                                          std::uint64_t window,
                                          std::mt19937_64& rng) {
  std::vector<Nat> relevant;
  const Bit base = p(state);
  for (std::uint64_t i = 0; i < window; ++i) {
    const BitString current = state.read(i);
    std::vector<BitString> candidates;
    candidates.push_back(BitString::from_text("1"));
    candidates.push_back(BitString::from_text("0"));
    candidates.push_back(BitString());
    for (int k = 0; k < 3; ++k)
      candidates.push_back(random_bits(rng, window));
    for (const BitString& candidate : candidates) {
      if (candidate == current) continue;
      if (p(state.write(i, candidate)) != base) {
        relevant.push_back(i);
        break;
      }
    }
  }
  return relevant;
}

std::vector<Nat> modified_registers(const MemoryState& before,
                                    const MemoryState& after) {
  std::set<Nat> keys;
  for (const auto& [i, w] : before.registers()) keys.insert(i);
  for (const auto& [i, w] : after.registers()) keys.insert(i);
  std::vector<Nat> changed;
  for (const Nat& i : keys)
    if (!(before.read(i) == after.read(i))) changed.push_back(i);
  return changed;
}

}  // namespace

ValidationReport validate_conditions(const StatePredicate& p,
                                     const StateTransformer& q,
                                     std::uint64_t trials,
                                     std::uint64_t window,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ValidationReport report;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    report.trials_run = trial + 1;
    const MemoryState state =
        trial == 0 ? MemoryState() : random_state(rng, window);

    const std::vector<Nat> relevant =
        reply_relevant_registers(p, state, window, rng);
    if (relevant.size() > 1) {
      report.violation_found = true;
      report.condition = 'a';
      report.description = "reply depends on registers " +
                           relevant[0].str() + " and " + relevant[1].str();
      report.witness = state;
      return report;
    }

    const std::vector<Nat> changed = modified_registers(state, q(state));
    if (changed.size() > 1) {
      report.violation_found = true;
      report.condition = 'b';
      report.description = "transformer modifies registers " +
                           changed[0].str() + " and " + changed[1].str();
      report.witness = state;
      return report;
    }

    if (!relevant.empty() && !changed.empty() && !(relevant[0] == changed[0])) {
      report.violation_found = true;
      report.condition = 'c';
      report.description = "reply depends on register " + relevant[0].str() +
                           " but register " + changed[0].str() +
                           " is modified";
      report.witness = state;
      return report;
    }
  }
  return report;
}

}  // namespace pgaram
