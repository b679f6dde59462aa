#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgaram/srram.hpp"

namespace pgaram {

/// A basic instruction: either one of the symbolic register-machine
/// instructions, or an opaque instruction carrying caller-supplied reply
/// and transformer functions. Opaque instructions compare equal by name
/// only; whether they satisfy the single-register conditions is the
/// caller's obligation (validate_conditions can search for violations).
class BasicInstruction {
public:
  static BasicInstruction symbolic(SrramInstruction instruction);
  static BasicInstruction opaque(std::string name,
                                 StatePredicate p = always_one(),
                                 StateTransformer q = identity_transform());

  bool is_symbolic() const { return symbolic_.has_value(); }
  const SrramInstruction& instruction() const { return *symbolic_; }
  const std::string& name() const;

  /// Executes the instruction: reply and successor state.
  StepResult execute(const MemoryState& state) const;

  /// Token text: the colon-separated instruction, or the opaque name.
  std::string text() const;

  bool operator==(const BasicInstruction& other) const;

private:
  struct Opaque {
    std::string name;
    StatePredicate p;
    StateTransformer q;
  };

  std::optional<SrramInstruction> symbolic_;
  std::shared_ptr<const Opaque> opaque_;
};

/// A primitive instruction: plain basic `a`, positive test `+a`, negative
/// test `-a`, forward jump `#l` (an unbounded natural; 0 means inaction),
/// or termination `!`.
class PrimitiveInstruction {
public:
  enum class Kind { Plain, PosTest, NegTest, Jump, Halt };

  static PrimitiveInstruction plain(BasicInstruction basic);
  static PrimitiveInstruction pos_test(BasicInstruction basic);
  static PrimitiveInstruction neg_test(BasicInstruction basic);
  static PrimitiveInstruction jump(Nat offset);
  static PrimitiveInstruction halt();

  Kind kind() const { return kind_; }
  bool is_jump() const { return kind_ == Kind::Jump; }
  bool has_basic() const {
    return kind_ == Kind::Plain || kind_ == Kind::PosTest ||
           kind_ == Kind::NegTest;
  }
  const BasicInstruction& basic() const { return *basic_; }
  const Nat& jump_offset() const { return jump_; }

  std::string text() const;

  bool operator==(const PrimitiveInstruction& other) const;

private:
  Kind kind_ = Kind::Halt;
  std::optional<BasicInstruction> basic_;
  Nat jump_ = 0;
};

/// An eventually periodic, non-empty sequence of primitive instructions:
/// a finite prefix followed by an optional repeating period. An empty
/// period means the sequence is finite. The representation is free-form;
/// canonicalize() computes the unique minimal one.
class InstructionSequence {
public:
  InstructionSequence(std::vector<PrimitiveInstruction> prefix,
                      std::vector<PrimitiveInstruction> period);

  static InstructionSequence finite(std::vector<PrimitiveInstruction> body);
  static InstructionSequence periodic(std::vector<PrimitiveInstruction> prefix,
                                      std::vector<PrimitiveInstruction> period);

  const std::vector<PrimitiveInstruction>& prefix() const { return prefix_; }
  const std::vector<PrimitiveInstruction>& period() const { return period_; }
  bool is_finite() const { return period_.empty(); }

  /// Instruction at a position of the unfolded sequence; nullopt past the
  /// end of a finite sequence.
  std::optional<PrimitiveInstruction> at(std::size_t position) const;

  /// Structural comparison of representations (not sequence equality; use
  /// seq_equal for that).
  bool operator==(const InstructionSequence& other) const = default;

private:
  std::vector<PrimitiveInstruction> prefix_;
  std::vector<PrimitiveInstruction> period_;
};

/// Concatenation. An already-infinite left operand absorbs the right one.
InstructionSequence concat(const InstructionSequence& s1,
                           const InstructionSequence& s2);

/// Infinite repetition. Repeating a finite sequence yields the purely
/// periodic sequence over its primitive root (so repeating w^n equals
/// repeating w); repeating an infinite sequence returns it unchanged.
InstructionSequence repeat(const InstructionSequence& s);

/// The unique minimal representative of the same sequence: shortest
/// prefix, and a period that is not a power of a shorter word.
InstructionSequence canonicalize(const InstructionSequence& s);

/// True iff both arguments denote the same instruction sequence.
bool seq_equal(const InstructionSequence& s1, const InstructionSequence& s2);

/// Collapses every chain of jumps to a single jump, reduces jumps through
/// the period modulo the period length, and turns jumps into jump cycles
/// or onto #0 into #0. The result is canonical and a fixed point of the
/// rewriting; jumps that leave a finite sequence are not touched.
InstructionSequence jump_normalize(const InstructionSequence& s);

/// Sequence equality after jump normalization of both sides.
bool struct_equal(const InstructionSequence& s1, const InstructionSequence& s2);

// Program text: instructions separated by ';', with `+a`/`-a` tests,
// `#N` jumps, `!` termination, and `(...)*` for repetition. Basic
// instructions are either colon-separated register-machine instructions
// or bare identifiers (opaque, with no-op semantics until bound).
// Whitespace between tokens is ignored. parse(program_text(s)) == s.
InstructionSequence parse_program(std::string_view text);
InstructionSequence parse_program_file(const std::string& path);
std::string program_text(const InstructionSequence& s);

}  // namespace pgaram
