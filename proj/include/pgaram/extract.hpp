#pragma once

#include "pgaram/sequence.hpp"
#include "pgaram/thread.hpp"

namespace pgaram {

/// The regular thread an instruction sequence produces under execution.
/// One node per distinct sequence position plus a shared deadlock node:
/// termination becomes S; a plain instruction branches to the next
/// position on either reply; tests branch to the next position and the
/// one after it; jumps are resolved away (jump offset 0, jumps past the
/// end of a finite sequence, and cyclic jump chains through the period
/// all mean inaction and yield D). The result is tau-normalized and
/// trimmed to the reachable part.
RegularThread extract(const InstructionSequence& s);

/// True iff both sequences produce bisimilar threads under execution.
bool behaviourally_equivalent(const InstructionSequence& s1,
                              const InstructionSequence& s2);

}  // namespace pgaram
