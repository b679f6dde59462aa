#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgaram/sequence.hpp"

namespace pgaram {

/// A thread action: either the internal action tau or a basic instruction.
/// Performing tau always yields the reply 1.
class Action {
public:
  static Action internal() { return Action(); }
  static Action of(BasicInstruction basic) {
    Action a;
    a.basic_ = std::move(basic);
    return a;
  }

  bool is_tau() const { return !basic_.has_value(); }
  const BasicInstruction& basic() const { return *basic_; }

  std::string text() const { return basic_ ? basic_->text() : "tau"; }

  bool operator==(const Action& other) const {
    if (is_tau() != other.is_tau()) return false;
    return is_tau() || basic() == other.basic();
  }

private:
  std::optional<BasicInstruction> basic_;
};

enum class NodeKind { Stop, Dead, Branch };

/// A regular thread: a finite rooted graph whose nodes either terminate
/// (S), deadlock (D), or perform an action and continue with one of two
/// successors depending on the reply. Node identity carries no meaning;
/// threads are compared by bisimilarity. Construction goes through the
/// Builder, which trims unreachable nodes and renumbers breadth-first
/// from the root, so equal-shaped graphs get equal node vectors.
class RegularThread {
public:
  struct Node {
    NodeKind kind = NodeKind::Dead;
    std::optional<Action> action;  // Branch only
    std::size_t next_then = 0;
    std::size_t next_else = 0;
  };

  class Builder {
  public:
    std::size_t add_stop();
    std::size_t add_dead();
    std::size_t add_branch(Action action, std::size_t next_then,
                           std::size_t next_else);
    /// Adds a branch whose successors are patched later (for cycles).
    std::size_t add_branch_deferred(Action action);
    void set_successors(std::size_t node, std::size_t next_then,
                        std::size_t next_else);
    RegularThread build(std::size_t root) &&;

  private:
    std::vector<Node> nodes_;
  };

  static RegularThread stop();
  static RegularThread dead();

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(std::size_t id) const { return nodes_[id]; }
  std::size_t root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }

private:
  RegularThread() = default;
  std::vector<Node> nodes_;
  std::size_t root_ = 0;
};

/// A finite thread: a tree over S, D and binary action branches. Shared
/// immutable subtrees keep projections of graph threads small.
class FiniteThread {
public:
  using Ptr = std::shared_ptr<const FiniteThread>;

  static Ptr stop();
  static Ptr dead();
  static Ptr branch(Action action, Ptr then_branch, Ptr else_branch);

  NodeKind kind() const { return kind_; }
  const Action& action() const { return *action_; }
  const Ptr& then_branch() const { return then_; }
  const Ptr& else_branch() const { return else_; }

private:
  FiniteThread(NodeKind kind, std::optional<Action> action, Ptr then_branch,
               Ptr else_branch)
      : kind_(kind), action_(std::move(action)), then_(std::move(then_branch)),
        else_(std::move(else_branch)) {}

  NodeKind kind_;
  std::optional<Action> action_;
  Ptr then_;
  Ptr else_;
};

/// Structural equality of finite threads (with sharing-aware memoization).
bool finite_equal(const FiniteThread::Ptr& a, const FiniteThread::Ptr& b);

/// The maximum number of actions a finite thread can perform; tau counts.
std::size_t depth(const FiniteThread::Ptr& t);

/// Projection: the approximation of t up to depth n. proj(0, t) is D;
/// branches project their action and recurse one level shallower.
FiniteThread::Ptr proj(std::size_t n, const RegularThread& t);

/// A finite thread as a (acyclic) regular thread graph.
RegularThread thread_from_tree(const FiniteThread::Ptr& t);

/// Unfolds an acyclic regular thread into a finite thread; throws
/// std::invalid_argument if the graph has a cycle.
FiniteThread::Ptr to_finite_tree(const RegularThread& t);

/// Redirects the else-successor of every tau branch to its then-successor
/// (performing tau always replies 1, so the else side is unreachable).
RegularThread tau_normalize(const RegularThread& t);

struct BisimResult {
  bool equivalent;
  /// When not equivalent: the least n for which the depth-n projections
  /// of the two (tau-normalized) threads differ.
  std::optional<std::size_t> distinguishing_depth;
};

/// Bisimilarity of regular threads, decided by partition refinement after
/// tau normalization of both sides. For finite-state threads this
/// coincides with equality of all finite-depth projections.
BisimResult check_bisimilar(const RegularThread& a, const RegularThread& b);
bool bisimilar(const RegularThread& a, const RegularThread& b);

/// Right-hand side of a recursion equation: S, D, a variable reference,
/// or an action branch over two right-hand sides.
class ThreadTerm {
public:
  enum class Kind { Stop, Dead, Var, Branch };

  static ThreadTerm stop();
  static ThreadTerm dead();
  static ThreadTerm var(std::string name);
  static ThreadTerm branch(Action action, ThreadTerm then_term,
                           ThreadTerm else_term);

  Kind kind() const { return impl_->kind; }
  const std::string& name() const { return impl_->name; }
  const Action& action() const { return *impl_->action; }
  const ThreadTerm& then_term() const { return *impl_->then_term; }
  const ThreadTerm& else_term() const { return *impl_->else_term; }

private:
  struct Impl {
    Kind kind;
    std::string name;
    std::optional<Action> action;
    std::shared_ptr<const ThreadTerm> then_term;
    std::shared_ptr<const ThreadTerm> else_term;
  };
  explicit ThreadTerm(std::shared_ptr<const Impl> impl)
      : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Solves a finite recursion-equation system {Xi = ti} into the regular
/// thread of the given root variable. Cycles of bare variables denote
/// unproductive recursion and resolve to D. Duplicate or undefined
/// variable names raise std::invalid_argument.
RegularThread thread_from_equations(
    const std::vector<std::pair<std::string, ThreadTerm>>& equations,
    const std::string& root);

/// Plain-text adjacency export, one line per node:
///   id: S  |  id: D  |  id: action ? thenId : elseId
std::string thread_text(const RegularThread& t);

/// DOT digraph export (reply-1 edges solid, reply-0 edges dashed).
std::string thread_dot(const RegularThread& t);

}  // namespace pgaram
