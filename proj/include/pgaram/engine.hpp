#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pgaram/extract.hpp"

namespace pgaram {

/// Execution bounds. Halting is undecidable, so every walk is bounded by
/// a number of executed basic actions; optionally also by the total
/// number of occupied memory bits (register indices plus contents).
/// Hitting a bound is always reported distinctly, never as deadlock.
struct RunLimits {
  std::uint64_t max_steps;
  std::optional<Nat> max_total_bits;

  explicit RunLimits(std::uint64_t steps,
                     std::optional<Nat> total_bits = std::nullopt)
      : max_steps(steps), max_total_bits(std::move(total_bits)) {
    if (max_steps < 1)
      throw std::invalid_argument("max_steps must be at least 1");
  }
};

enum class RunOutcome { Halted, Dead, StepLimit };
std::string_view outcome_name(RunOutcome outcome);

/// Per-run accounting. For halted runs the numbers are exact totals; for
/// Dead and StepLimit outcomes they are the totals accumulated up to the
/// point the run was decided or truncated.
struct CostReport {
  std::uint64_t uniform_steps = 0;  // basic actions executed
  Nat bit_cost = 0;                 // accumulated bit-oriented cost
  bool bit_cost_defined = true;     // false once an opaque action ran
  Nat peak_space = 0;               // bit-oriented space, peak over configurations
  RunOutcome outcome = RunOutcome::Halted;
};

/// A point of a computation: the current thread node and memory state.
/// Consecutive configurations are linked by one executed basic action.
struct Configuration {
  std::size_t node;
  MemoryState memory;
};

enum class WalkStatus { Done, StepLimit };

struct ApplyResult {
  WalkStatus status;
  RamMemory memory;  // at truncation when status is StepLimit
};

struct UseResult {
  WalkStatus status;
  RegularThread thread;
  RamMemory memory;
};

/// The memory after a thread has run against it: termination keeps the
/// final state, deadlock (or an action against an inoperative memory, or
/// a cycle of internal actions) makes the memory inoperative.
ApplyResult apply(const RegularThread& t, const RamMemory& m,
                  const RunLimits& limits);

/// The residual thread after a memory has absorbed a thread's actions:
/// every executed action and every passed internal action leaves a tau,
/// so a halting run yields tau^n followed by S or D. An action against an
/// inoperative memory contributes one tau and deadlocks. A cycle of
/// internal actions yields the infinite tau stream (a tau self-loop).
/// When the step limit hits, the returned thread is the tau trace so far
/// followed by the not-yet-consumed remainder of the input thread.
UseResult use(const RegularThread& t, const RamMemory& m,
              const RunLimits& limits);

/// Bit-oriented cost of fetching an operand: the length of the numeral of
/// every register index touched plus the length of every register content
/// read. Immediates cost the length of their numeral.
Nat source_cost(const MemoryState& state, const Src& src);

/// Bit-oriented cost of one instruction: the more expensive operand for
/// comparisons and for binary operations other than mul/div, the product
/// of the operand costs for mul/div, the single operand for unary
/// operations.
Nat instruction_cost(const MemoryState& state,
                     const SrramInstruction& instruction);

struct RunOptions {
  bool record_trace = false;
  /// Registers 1..input_registers are designated inputs: they are skipped
  /// by the space measure and watched for modification.
  std::size_t input_registers = 0;
};

struct RunOutput {
  RamMemory memory;
  CostReport report;
  std::vector<Configuration> trace;  // only when record_trace
  bool inputs_preserved = true;
};

/// Extracts the thread of a program and runs it against an operative
/// memory, accounting uniform steps, bit-oriented cost and peak space
/// over all configurations (initial one included).
RunOutput run(const InstructionSequence& program, const MemoryState& initial,
              const RunLimits& limits, const RunOptions& options = {});

// --------------------------------------------------------------------------
// Checking that a program computes a function

struct ComputeCase {
  std::vector<BitString> inputs;           // loaded into registers 1..n
  std::optional<BitString> expected;       // nullopt: divergence expected
};

enum class Measure { Uniform, BitOriented };

/// Polynomial bound, coefficients c0..ck for c0 + c1 n + ... + ck n^k.
using CostBound = std::vector<Nat>;
Nat eval_poly(const CostBound& coefficients, const Nat& n);

enum class CaseVerdict { Pass, Fail, Inconclusive };
std::string_view verdict_name(CaseVerdict verdict);

struct CaseResult {
  CaseVerdict verdict;
  std::string detail;
  CostReport report;
};

struct CheckReport {
  std::vector<CaseResult> cases;
  CaseVerdict overall = CaseVerdict::Pass;
};

/// Runs the program on each case over the empty memory with the inputs in
/// registers 1..n. A case with an expected output passes when the run
/// halts with register 0 holding exactly that output, the selected cost
/// measure stays within the time bound at n = total input length, the
/// peak space stays within the space bound, and no input register is ever
/// changed. A case expecting divergence passes when the run provably
/// deadlocks. Hitting the step limit makes a case inconclusive, never a
/// pass.
CheckReport check_computes(const InstructionSequence& program,
                           const std::vector<ComputeCase>& cases,
                           const std::optional<CostBound>& time_bound,
                           const std::optional<CostBound>& space_bound,
                           Measure measure, const RunLimits& limits);

/// Check-spec file: one case per line, "in: w1,w2 ; out: w" with w over
/// {0,1} ("e" for the empty string, "undefined" for expected divergence),
/// plus optional "T: c0,c1,..." and "S: c0,c1,..." bound lines. Blank
/// lines and '#' comments are ignored.
struct CheckSpec {
  std::vector<ComputeCase> cases;
  std::optional<CostBound> time_bound;
  std::optional<CostBound> space_bound;
};

CheckSpec parse_check_spec(std::istream& in);
CheckSpec parse_check_spec_file(const std::string& path);

}  // namespace pgaram
