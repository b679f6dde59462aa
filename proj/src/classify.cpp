#include "pgaram/classify.hpp"

#include <vector>

namespace pgaram {

namespace {

bool standard_op(const SrramInstruction& i) {
  switch (i.op()) {
    case Opcode::Add:
    case Opcode::Sub:
    case Opcode::Mov:
    case Opcode::Eq:
    case Opcode::Gt:
      return true;
    default:
      return false;
  }
}

bool successor_op(const SrramInstruction& i) {
  switch (i.op()) {
    case Opcode::Add:
      return i.src2() == Src::imm(1);
    case Opcode::Mov:
    case Opcode::Eq:
    case Opcode::Gt:
      return true;
    default:
      return false;
  }
}

}  // namespace

ProgramClass classify_program(const InstructionSequence& s) {
  const InstructionSequence c = canonicalize(s);
  if (c.is_finite() || !c.prefix().empty()) return {};

  const std::vector<PrimitiveInstruction>& body = c.period();
  std::vector<SrramInstruction> ops;
  std::size_t i = 0;
  while (i < body.size()) {
    const PrimitiveInstruction& u = body[i];
    switch (u.kind()) {
      case PrimitiveInstruction::Kind::Halt:
      case PrimitiveInstruction::Kind::Jump:
        ++i;
        break;
      case PrimitiveInstruction::Kind::Plain:
        if (!u.basic().is_symbolic()) return {};
        if (u.basic().instruction().is_comparison()) return {};
        ops.push_back(u.basic().instruction());
        ++i;
        break;
      case PrimitiveInstruction::Kind::PosTest:
        if (!u.basic().is_symbolic()) return {};
        if (!u.basic().instruction().is_comparison()) return {};
        if (i + 1 >= body.size() || !body[i + 1].is_jump()) return {};
        ops.push_back(u.basic().instruction());
        i += 2;
        break;
      case PrimitiveInstruction::Kind::NegTest:
        return {};
    }
  }

  ProgramClass result;
  result.is_srram = true;
  result.is_standard = true;
  result.is_successor = true;
  for (const SrramInstruction& op : ops) {
    result.is_standard = result.is_standard && standard_op(op);
    result.is_successor = result.is_successor && successor_op(op);
  }
  return result;
}

}  // namespace pgaram
