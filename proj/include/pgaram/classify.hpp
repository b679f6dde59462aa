#pragma once

#include "pgaram/sequence.hpp"

namespace pgaram {

struct ProgramClass {
  bool is_srram = false;
  bool is_standard = false;
  bool is_successor = false;

  bool operator==(const ProgramClass& other) const = default;
};

/// Recognizes the register-machine program shapes, up to instruction-
/// sequence equality (the canonical form is classified, so rotated or
/// unrolled representations of the same program classify alike).
///
/// A program is a pure repetition whose body is a run of units, each of
/// which is a plain non-comparison instruction, a positive test on a
/// comparison immediately followed by a jump, a bare jump, or the
/// termination instruction. Negative tests, plain comparisons, tests on
/// non-comparisons, opaque basic instructions, and a trailing test with
/// no jump to pair with disqualify it. "standard" additionally restricts
/// the operations to add/sub/mov/eq/gt; "successor" to mov/eq/gt and
/// add with second operand #1.
ProgramClass classify_program(const InstructionSequence& s);

}  // namespace pgaram
