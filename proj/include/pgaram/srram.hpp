#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "pgaram/memory.hpp"

namespace pgaram {

// A source operand: an immediate (#i, the shortest bit string for i), a
// directly addressed register (i), or an indirectly addressed register
// (@i, the register whose number is held in register i).
enum class SrcMode { Immediate, Direct, Indirect };

struct Src {
  SrcMode mode;
  Nat index;

  static Src imm(Nat i) { return {SrcMode::Immediate, std::move(i)}; }
  static Src dir(Nat i) { return {SrcMode::Direct, std::move(i)}; }
  static Src ind(Nat i) { return {SrcMode::Indirect, std::move(i)}; }

  std::string text() const;
  bool operator==(const Src& other) const = default;
};

// A destination operand: direct or indirect register addressing only;
// there are no immediate destinations.
enum class DstMode { Direct, Indirect };

struct Dst {
  DstMode mode;
  Nat index;

  static Dst dir(Nat i) { return {DstMode::Direct, std::move(i)}; }
  static Dst ind(Nat i) { return {DstMode::Indirect, std::move(i)}; }

  std::string text() const;
  bool operator==(const Dst& other) const = default;
};

enum class Opcode {
  Add, Sub, Mul, Div, And, Or, Xor,      // binary: op:src1:src2:dst
  Not, Shl, Shr, Rol, Ror, Mov,          // unary:  op:src1:dst
  Eq, Gt                                 // compare: op:src1:src2
};

enum class OpClass { Binary, Unary, Compare };

OpClass opcode_class(Opcode op);
std::string_view opcode_name(Opcode op);
std::optional<Opcode> opcode_from_name(std::string_view name);

/// One instruction of the register-machine instruction set: a binary
/// operation, a unary operation, or a comparison. Binary and unary
/// instructions write their result to the destination register and always
/// reply 1; comparisons leave the memory unchanged and produce the
/// comparison outcome as the reply.
class SrramInstruction {
public:
  static SrramInstruction binary(Opcode op, Src src1, Src src2, Dst dst);
  static SrramInstruction unary(Opcode op, Src src1, Dst dst);
  static SrramInstruction compare(Opcode op, Src src1, Src src2);

  Opcode op() const { return op_; }
  OpClass op_class() const { return opcode_class(op_); }
  bool is_comparison() const { return op_class() == OpClass::Compare; }
  const Src& src1() const { return src1_; }
  const Src& src2() const { return *src2_; }
  const Dst& dst() const { return *dst_; }

  /// Canonical colon-separated text, e.g. "add:#3:5:@2".
  std::string text() const;

  bool operator==(const SrramInstruction& other) const = default;

private:
  SrramInstruction(Opcode op, Src src1, std::optional<Src> src2,
                   std::optional<Dst> dst)
      : op_(op), src1_(std::move(src1)), src2_(std::move(src2)),
        dst_(std::move(dst)) {}

  Opcode op_;
  Src src1_;
  std::optional<Src> src2_;
  std::optional<Dst> dst_;
};

/// Parses a colon-separated instruction token ("OP:ARG:ARG[:ARG]" with
/// ARG one of "#N", "N", "@N", N decimal). Unknown operations, wrong
/// operand counts, malformed operands and immediate destinations are
/// reported as distinct ParseErrors.
SrramInstruction parse_instruction(std::string_view text);

/// Value of a source operand in a memory state: ntob(i) for #i, the
/// register content for i, and the content of the register numbered by
/// bton(content of i) for @i.
BitString src_value(const MemoryState& state, const Src& src);

/// Register number a destination refers to: i itself, or bton of the
/// content of register i for @i.
Nat dst_register(const MemoryState& state, const Dst& dst);

struct StepResult {
  Bit reply;
  MemoryState state;
};

/// Executes one instruction against a memory state.
StepResult step(const SrramInstruction& instruction, const MemoryState& state);

// A basic RAM instruction is a pair (p, q) of a reply predicate and a
// state transformer. The predicate of every write instruction here is the
// constant-1 reply; the transformer of every comparison is the identity.
using StatePredicate = std::function<Bit(const MemoryState&)>;
using StateTransformer = std::function<MemoryState(const MemoryState&)>;

StatePredicate always_one();
StateTransformer identity_transform();

/// The (p, q) pair an instruction denotes.
std::pair<StatePredicate, StateTransformer> instruction_semantics(
    const SrramInstruction& instruction);

/// Outcome of a randomized search for violations of the basic-instruction
/// conditions: (a) the reply must not depend on more than one register,
/// (b) the transformer must not modify more than one register, (c) when a
/// register influences the reply and a register is modified, those must
/// be one and the same register.
struct ValidationReport {
  bool violation_found = false;
  char condition = 0;          // 'a', 'b' or 'c' when a violation was found
  std::string description;
  MemoryState witness;
  std::uint64_t trials_run = 0;

  bool ok() const { return !violation_found; }
};

/// Randomized refutation search over `trials` sampled states, with
/// register indices and perturbation lengths bounded by `window`. Finding
/// no violation is not a proof; a reported witness is concrete and
/// recheckable.
ValidationReport validate_conditions(const StatePredicate& p,
                                     const StateTransformer& q,
                                     std::uint64_t trials,
                                     std::uint64_t window,
                                     std::uint64_t seed = 0x243f6a8885a308d3ULL);

}  // namespace pgaram
