#include "pgaram/engine.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "pgaram/errors.hpp"

namespace pgaram {

std::string_view outcome_name(RunOutcome outcome) {
  switch (outcome) {
    case RunOutcome::Halted: return "halted";
    case RunOutcome::Dead: return "dead";
    case RunOutcome::StepLimit: return "step-limit";
  }
  return {};
}

std::string_view verdict_name(CaseVerdict verdict) {
  switch (verdict) {
    case CaseVerdict::Pass: return "pass";
    case CaseVerdict::Fail: return "fail";
    case CaseVerdict::Inconclusive: return "inconclusive";
  }
  return {};
}

namespace {

Nat total_bits(const MemoryState& state) {
  Nat total = 0;
  for (const auto& [index, content] : state.registers())
    total += Nat(nat_bit_length(index)) + content.size();
  return total;
}

// How a bounded walk over a thread graph ended.
enum class WalkEnd {
  Stop,              // reached S
  Dead,              // reached D
  TauCycle,          // cycle of internal actions, no basic action possible
  InoperativeAction, // basic action faced an inoperative memory
  StepLimit,
};

struct WalkResult {
  WalkEnd end;
  RamMemory memory;
  std::size_t final_node;
  std::uint64_t actions = 0;  // basic actions executed
  std::uint64_t taus = 0;     // taus of the residual (actions + passed taus)
};

// Deterministic small-step walk shared by apply, use and run. The
// on_action hook sees the node the walk moves to and both memory states.
WalkResult walk_thread(
    const RegularThread& t, RamMemory memory, const RunLimits& limits,
    const std::function<void(std::size_t next_node, const BasicInstruction&,
                             const MemoryState& before,
                             const MemoryState& after)>& on_action) {
  WalkResult result;
  std::size_t cur = t.root();
  std::set<std::size_t> taus_since_action;
  while (true) {
    const RegularThread::Node& node = t.node(cur);
    if (node.kind == NodeKind::Stop) {
      result.end = WalkEnd::Stop;
      break;
    }
    if (node.kind == NodeKind::Dead) {
      result.end = WalkEnd::Dead;
      break;
    }
    if (node.action->is_tau()) {
      if (!taus_since_action.insert(cur).second) {
        result.end = WalkEnd::TauCycle;
        break;
      }
      ++result.taus;
      cur = node.next_then;
      continue;
    }
    if (!memory.is_operative()) {
      result.end = WalkEnd::InoperativeAction;
      break;
    }
    if (result.actions == limits.max_steps) {
      result.end = WalkEnd::StepLimit;
      break;
    }
    const MemoryState& before = memory.state();
    StepResult stepped = node.action->basic().execute(before);
    const std::size_t next = stepped.reply ? node.next_then : node.next_else;
    ++result.actions;
    ++result.taus;
    taus_since_action.clear();
    if (on_action) on_action(next, node.action->basic(), before, stepped.state);
    const bool over_bits =
        limits.max_total_bits && total_bits(stepped.state) > *limits.max_total_bits;
    memory = RamMemory::operative(std::move(stepped.state));
    cur = next;
    if (over_bits) {
      result.end = WalkEnd::StepLimit;
      break;
    }
  }
  result.memory = std::move(memory);
  result.final_node = cur;
  return result;
}

// Copies the subgraph reachable from `from` into the builder; returns the
// copied node for `from`.
std::size_t copy_subgraph(RegularThread::Builder& b, const RegularThread& t,
                          std::size_t from) {
  std::vector<std::size_t> copied(t.size(), SIZE_MAX);
  auto go = [&](auto&& self, std::size_t id) -> std::size_t {
    if (copied[id] != SIZE_MAX) return copied[id];
    const RegularThread::Node& node = t.node(id);
    switch (node.kind) {
      case NodeKind::Stop: copied[id] = b.add_stop(); break;
      case NodeKind::Dead: copied[id] = b.add_dead(); break;
      case NodeKind::Branch: {
        const std::size_t placeholder = b.add_branch_deferred(*node.action);
        copied[id] = placeholder;
        const std::size_t then_copy = self(self, node.next_then);
        const std::size_t else_copy = self(self, node.next_else);
        b.set_successors(placeholder, then_copy, else_copy);
        break;
      }
    }
    return copied[id];
  };
  return go(go, from);
}

RegularThread tau_chain(std::uint64_t taus, WalkEnd end,
                        const RegularThread& original,
                        std::size_t final_node) {
  RegularThread::Builder b;
  std::size_t terminal = 0;
  switch (end) {
    case WalkEnd::Stop: terminal = b.add_stop(); break;
    case WalkEnd::Dead: terminal = b.add_dead(); break;
    case WalkEnd::InoperativeAction: {
      const std::size_t dead = b.add_dead();
      terminal = b.add_branch(Action::internal(), dead, dead);
      break;
    }
    case WalkEnd::TauCycle: {
      terminal = b.add_branch_deferred(Action::internal());
      b.set_successors(terminal, terminal, terminal);
      break;
    }
    case WalkEnd::StepLimit:
      terminal = copy_subgraph(b, original, final_node);
      break;
  }
  std::size_t head = terminal;
  for (std::uint64_t i = 0; i < taus; ++i)
    head = b.add_branch(Action::internal(), head, head);
  return std::move(b).build(head);
}

}  // namespace

ApplyResult apply(const RegularThread& t, const RamMemory& m,
                  const RunLimits& limits) {
  const WalkResult walk = walk_thread(t, m, limits, nullptr);
  switch (walk.end) {
    case WalkEnd::Stop:
      return {WalkStatus::Done, walk.memory};
    case WalkEnd::Dead:
    case WalkEnd::TauCycle:
    case WalkEnd::InoperativeAction:
      return {WalkStatus::Done, RamMemory::inoperative()};
    case WalkEnd::StepLimit:
      return {WalkStatus::StepLimit, walk.memory};
  }
  throw std::logic_error("unreachable");
}

UseResult use(const RegularThread& t, const RamMemory& m,
              const RunLimits& limits) {
  const WalkResult walk = walk_thread(t, m, limits, nullptr);
  const WalkStatus status = walk.end == WalkEnd::StepLimit
                                ? WalkStatus::StepLimit
                                : WalkStatus::Done;
  return {status, tau_chain(walk.taus, walk.end, t, walk.final_node),
          walk.memory};
}

Nat source_cost(const MemoryState& state, const Src& src) {
  const Nat index_len = nat_bit_length(src.index);
  switch (src.mode) {
    case SrcMode::Immediate:
      return index_len;
    case SrcMode::Direct:
      return index_len + state.read(src.index).size();
    case SrcMode::Indirect: {
      const BitString& pointer = state.read(src.index);
      return index_len + pointer.size() + state.read(bton(pointer)).size();
    }
  }
  return 0;
}

Nat instruction_cost(const MemoryState& state,
                     const SrramInstruction& instruction) {
  switch (instruction.op_class()) {
    case OpClass::Binary: {
      const Nat c1 = source_cost(state, instruction.src1());
      const Nat c2 = source_cost(state, instruction.src2());
      if (instruction.op() == Opcode::Mul || instruction.op() == Opcode::Div)
        return c1 * c2;
      return std::max(c1, c2);
    }
    case OpClass::Unary:
      return source_cost(state, instruction.src1());
    case OpClass::Compare:
      return std::max(source_cost(state, instruction.src1()),
                      source_cost(state, instruction.src2()));
  }
  return 0;
}

namespace {

// Space of one configuration: numeral length of the register number plus
// content length, summed over occupied non-input registers.
Nat configuration_space(const MemoryState& state,
                        std::size_t input_registers) {
  Nat space = 0;
  for (const auto& [index, content] : state.registers()) {
    if (index >= 1 && index <= input_registers) continue;
    space += Nat(nat_bit_length(index)) + content.size();
  }
  return space;
}

}  // namespace

RunOutput run(const InstructionSequence& program, const MemoryState& initial,
              const RunLimits& limits, const RunOptions& options) {
  const RegularThread thread = extract(program);
  RunOutput output;
  std::vector<BitString> input_values(options.input_registers);
  for (std::size_t i = 0; i < options.input_registers; ++i)
    input_values[i] = initial.read(i + 1);

  if (options.record_trace)
    output.trace.push_back(Configuration{thread.root(), initial});
  output.report.peak_space =
      configuration_space(initial, options.input_registers);

  auto on_action = [&](std::size_t next_node, const BasicInstruction& basic,
                       const MemoryState& before, const MemoryState& after) {
    ++output.report.uniform_steps;
    if (basic.is_symbolic()) {
      if (output.report.bit_cost_defined)
        output.report.bit_cost += instruction_cost(before, basic.instruction());
    } else {
      output.report.bit_cost_defined = false;
    }
    output.report.peak_space =
        std::max(output.report.peak_space,
                 configuration_space(after, options.input_registers));
    for (std::size_t i = 0; i < options.input_registers; ++i) {
      if (!(after.read(i + 1) == input_values[i]))
        output.inputs_preserved = false;
    }
    if (options.record_trace)
      output.trace.push_back(Configuration{next_node, after});
  };

  const WalkResult walk =
      walk_thread(thread, RamMemory::operative(initial), limits, on_action);
  switch (walk.end) {
    case WalkEnd::Stop:
      output.report.outcome = RunOutcome::Halted;
      output.memory = walk.memory;
      break;
    case WalkEnd::Dead:
    case WalkEnd::TauCycle:
    case WalkEnd::InoperativeAction:
      output.report.outcome = RunOutcome::Dead;
      output.memory = RamMemory::inoperative();
      break;
    case WalkEnd::StepLimit:
      output.report.outcome = RunOutcome::StepLimit;
      output.memory = walk.memory;
      break;
  }
  return output;
}

Nat eval_poly(const CostBound& coefficients, const Nat& n) {
  Nat value = 0;
  Nat power = 1;
  for (const Nat& c : coefficients) {
    value += c * power;
    power *= n;
  }
  return value;
}

CheckReport check_computes(const InstructionSequence& program,
                           const std::vector<ComputeCase>& cases,
                           const std::optional<CostBound>& time_bound,
                           const std::optional<CostBound>& space_bound,
                           Measure measure, const RunLimits& limits) {
  CheckReport report;
  bool any_fail = false;
  bool any_inconclusive = false;
  for (const ComputeCase& c : cases) {
    MemoryState initial;
    Nat total_input_len = 0;
    for (std::size_t i = 0; i < c.inputs.size(); ++i) {
      initial = initial.write(i + 1, c.inputs[i]);
      total_input_len += c.inputs[i].size();
    }
    RunOptions options;
    options.input_registers = c.inputs.size();
    const RunOutput out = run(program, initial, limits, options);

    CaseResult result{CaseVerdict::Pass, "ok", out.report};
    auto fail = [&](std::string detail) {
      result.verdict = CaseVerdict::Fail;
      result.detail = std::move(detail);
    };

    if (out.report.outcome == RunOutcome::StepLimit) {
      result.verdict = CaseVerdict::Inconclusive;
      result.detail = "undetermined: step limit reached";
    } else if (c.expected) {
      if (out.report.outcome != RunOutcome::Halted) {
        fail("expected a result, run deadlocked");
      } else if (!(out.memory.state().read(0) == *c.expected)) {
        fail("output mismatch: register 0 holds '" +
             out.memory.state().read(0).text() + "', expected '" +
             c.expected->text() + "'");
      } else {
        if (time_bound) {
          const Nat bound = eval_poly(*time_bound, total_input_len);
          if (measure == Measure::Uniform) {
            if (Nat(out.report.uniform_steps) > bound)
              fail("time bound exceeded: " +
                   std::to_string(out.report.uniform_steps) + " steps > " +
                   bound.str());
          } else if (!out.report.bit_cost_defined) {
            fail("bit-oriented cost undefined (opaque instruction executed)");
          } else if (out.report.bit_cost > bound) {
            fail("time bound exceeded: cost " + out.report.bit_cost.str() +
                 " > " + bound.str());
          }
        }
        if (result.verdict == CaseVerdict::Pass && space_bound) {
          const Nat bound = eval_poly(*space_bound, total_input_len);
          if (out.report.peak_space > bound)
            fail("space bound exceeded: " + out.report.peak_space.str() +
                 " > " + bound.str());
          else if (!out.inputs_preserved)
            fail("input register modified during the run");
        }
      }
    } else {
      if (out.report.outcome != RunOutcome::Dead)
        fail("expected divergence, run halted");
    }

    any_fail = any_fail || result.verdict == CaseVerdict::Fail;
    any_inconclusive =
        any_inconclusive || result.verdict == CaseVerdict::Inconclusive;
    report.cases.push_back(std::move(result));
  }
  report.overall = any_fail ? CaseVerdict::Fail
                   : any_inconclusive ? CaseVerdict::Inconclusive
                                      : CaseVerdict::Pass;
  return report;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = s.find(sep, start);
    if (at == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, at - start));
    start = at + 1;
  }
}

BitString parse_bits_token(std::string_view token, std::size_t lineno) {
  if (token == "e") return BitString();
  try {
    return BitString::from_text(token);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), lineno);
  }
}

CostBound parse_bound(std::string_view text, std::size_t lineno) {
  CostBound bound;
  for (std::string_view part : split(text, ',')) {
    part = trim(part);
    if (part.empty() ||
        part.find_first_not_of("0123456789") != std::string_view::npos)
      throw ParseError("invalid coefficient '" + std::string(part) + "'",
                       lineno);
    bound.emplace_back(std::string(part));
  }
  return bound;
}

}  // namespace

CheckSpec parse_check_spec(std::istream& in) {
  CheckSpec spec;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (body.starts_with("T:")) {
      spec.time_bound = parse_bound(body.substr(2), lineno);
      continue;
    }
    if (body.starts_with("S:")) {
      spec.space_bound = parse_bound(body.substr(2), lineno);
      continue;
    }
    if (!body.starts_with("in:"))
      throw ParseError("expected 'in:', 'T:' or 'S:'", lineno);
    const std::size_t semi = body.find(';');
    if (semi == std::string_view::npos)
      throw ParseError("expected '; out:' after the inputs", lineno);
    std::string_view inputs_text = trim(body.substr(3, semi - 3));
    std::string_view out_part = trim(body.substr(semi + 1));
    if (!out_part.starts_with("out:"))
      throw ParseError("expected 'out:' after ';'", lineno);
    std::string_view out_text = trim(out_part.substr(4));

    ComputeCase c;
    if (!inputs_text.empty()) {
      for (std::string_view token : split(inputs_text, ','))
        c.inputs.push_back(parse_bits_token(trim(token), lineno));
    }
    if (out_text == "undefined") {
      c.expected = std::nullopt;
    } else {
      c.expected = parse_bits_token(out_text, lineno);
    }
    spec.cases.push_back(std::move(c));
  }
  return spec;
}

CheckSpec parse_check_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open check spec '" + path + "'");
  return parse_check_spec(in);
}

}  // namespace pgaram
