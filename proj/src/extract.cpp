#include "pgaram/extract.hpp"

#include <optional>
#include <vector>

namespace pgaram {

namespace {

// Positions of the unfolded sequence map onto finitely many
// representatives: prefix positions stand for themselves, positions past
// the prefix fold into the period.
struct PositionMap {
  std::size_t prefix_len;
  std::size_t period_len;

  std::optional<std::size_t> representative(const Nat& position) const {
    if (position < prefix_len) return static_cast<std::size_t>(position);
    if (period_len == 0) return std::nullopt;  // past the end
    return prefix_len +
           static_cast<std::size_t>((position - prefix_len) % period_len);
  }
};

}  // namespace

RegularThread extract(const InstructionSequence& s) {
  const std::size_t p = s.prefix().size();
  const std::size_t q = s.period().size();
  const std::size_t n = p + q;
  const PositionMap positions{p, q};
  auto instr = [&](std::size_t i) -> const PrimitiveInstruction& {
    return i < p ? s.prefix()[i] : s.period()[i - p];
  };

  RegularThread::Builder b;
  const std::size_t dead_node = b.add_dead();

  // A node per non-jump position.
  std::vector<std::size_t> node_of(n, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    const PrimitiveInstruction& u = instr(i);
    if (u.kind() == PrimitiveInstruction::Kind::Halt) {
      node_of[i] = b.add_stop();
    } else if (u.has_basic()) {
      node_of[i] = b.add_branch_deferred(Action::of(u.basic()));
    }
  }

  // Jump chains resolve to a non-jump position or to deadlock; a chain
  // that revisits a position (possible through the period) never reaches
  // a basic action and means inaction.
  enum class State { Unvisited, InProgress, Done };
  std::vector<State> state(n, State::Unvisited);
  std::vector<std::size_t> jump_result(n, SIZE_MAX);  // node id or dead
  auto resolve_jump = [&](std::size_t start) {
    if (state[start] == State::Done) return;
    std::vector<std::size_t> path;
    std::size_t result = dead_node;
    std::size_t cur = start;
    while (true) {
      if (state[cur] == State::Done) {
        result = jump_result[cur];
        break;
      }
      if (state[cur] == State::InProgress) break;  // cycle: deadlock
      state[cur] = State::InProgress;
      path.push_back(cur);
      const Nat& offset = instr(cur).jump_offset();
      if (offset == 0) break;
      const std::optional<std::size_t> target =
          positions.representative(Nat(cur) + offset);
      if (!target) break;  // past the end of a finite sequence
      if (!instr(*target).is_jump()) {
        result = node_of[*target];
        break;
      }
      cur = *target;
    }
    for (std::size_t i : path) {
      state[i] = State::Done;
      jump_result[i] = result;
    }
  };

  // Thread node a given unfolded position continues with.
  auto continuation = [&](const Nat& position) -> std::size_t {
    const std::optional<std::size_t> rep = positions.representative(position);
    if (!rep) return dead_node;
    if (!instr(*rep).is_jump()) return node_of[*rep];
    resolve_jump(*rep);
    return jump_result[*rep];
  };

  for (std::size_t i = 0; i < n; ++i) {
    const PrimitiveInstruction& u = instr(i);
    if (!u.has_basic()) continue;
    const std::size_t next1 = continuation(Nat(i) + 1);
    const std::size_t next2 = continuation(Nat(i) + 2);
    switch (u.kind()) {
      case PrimitiveInstruction::Kind::Plain:
        b.set_successors(node_of[i], next1, next1);
        break;
      case PrimitiveInstruction::Kind::PosTest:
        b.set_successors(node_of[i], next1, next2);
        break;
      case PrimitiveInstruction::Kind::NegTest:
        b.set_successors(node_of[i], next2, next1);
        break;
      default: break;
    }
  }

  return tau_normalize(std::move(b).build(continuation(0)));
}

bool behaviourally_equivalent(const InstructionSequence& s1,
                              const InstructionSequence& s2) {
  return bisimilar(extract(s1), extract(s2));
}

}  // namespace pgaram
