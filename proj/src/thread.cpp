#include "pgaram/thread.hpp"

#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pgaram {

// ---------------------------------------------------------------------------
// RegularThread builder

std::size_t RegularThread::Builder::add_stop() {
  nodes_.push_back(Node{NodeKind::Stop, std::nullopt, 0, 0});
  return nodes_.size() - 1;
}

std::size_t RegularThread::Builder::add_dead() {
  nodes_.push_back(Node{NodeKind::Dead, std::nullopt, 0, 0});
  return nodes_.size() - 1;
}

std::size_t RegularThread::Builder::add_branch(Action action,
                                               std::size_t next_then,
                                               std::size_t next_else) {
  nodes_.push_back(Node{NodeKind::Branch, std::move(action), next_then,
                        next_else});
  return nodes_.size() - 1;
}

std::size_t RegularThread::Builder::add_branch_deferred(Action action) {
  nodes_.push_back(Node{NodeKind::Branch, std::move(action), 0, 0});
  return nodes_.size() - 1;
}

void RegularThread::Builder::set_successors(std::size_t node,
                                            std::size_t next_then,
                                            std::size_t next_else) {
  nodes_[node].next_then = next_then;
  nodes_[node].next_else = next_else;
}

RegularThread RegularThread::Builder::build(std::size_t root) && {
  if (root >= nodes_.size())
    throw std::invalid_argument("root node out of range");
  // Breadth-first renumbering from the root; unreachable nodes drop out.
  std::vector<std::size_t> renumber(nodes_.size(), SIZE_MAX);
  std::deque<std::size_t> queue{root};
  renumber[root] = 0;
  std::vector<std::size_t> order{root};
  while (!queue.empty()) {
    const std::size_t id = queue.front();
    queue.pop_front();
    const Node& node = nodes_[id];
    if (node.kind != NodeKind::Branch) continue;
    for (std::size_t next : {node.next_then, node.next_else}) {
      if (next >= nodes_.size())
        throw std::invalid_argument("successor out of range");
      if (renumber[next] == SIZE_MAX) {
        renumber[next] = order.size();
        order.push_back(next);
        queue.push_back(next);
      }
    }
  }
  RegularThread t;
  t.root_ = 0;
  t.nodes_.reserve(order.size());
  for (std::size_t id : order) {
    Node node = nodes_[id];
    if (node.kind == NodeKind::Branch) {
      node.next_then = renumber[node.next_then];
      node.next_else = renumber[node.next_else];
    }
    t.nodes_.push_back(std::move(node));
  }
  return t;
}

RegularThread RegularThread::stop() {
  Builder b;
  const std::size_t id = b.add_stop();
  return std::move(b).build(id);
}

RegularThread RegularThread::dead() {
  Builder b;
  const std::size_t id = b.add_dead();
  return std::move(b).build(id);
}

// ---------------------------------------------------------------------------
// FiniteThread

FiniteThread::Ptr FiniteThread::stop() {
  static const Ptr instance(
      new FiniteThread(NodeKind::Stop, std::nullopt, nullptr, nullptr));
  return instance;
}

FiniteThread::Ptr FiniteThread::dead() {
  static const Ptr instance(
      new FiniteThread(NodeKind::Dead, std::nullopt, nullptr, nullptr));
  return instance;
}

FiniteThread::Ptr FiniteThread::branch(Action action, Ptr then_branch,
                                       Ptr else_branch) {
  return Ptr(new FiniteThread(NodeKind::Branch, std::move(action),
                              std::move(then_branch),
                              std::move(else_branch)));
}

bool finite_equal(const FiniteThread::Ptr& a, const FiniteThread::Ptr& b) {
  std::set<std::pair<const FiniteThread*, const FiniteThread*>> seen;
  auto go = [&](auto&& self, const FiniteThread::Ptr& x,
                const FiniteThread::Ptr& y) -> bool {
    if (x.get() == y.get()) return true;
    if (x->kind() != y->kind()) return false;
    if (x->kind() != NodeKind::Branch) return true;
    if (!seen.insert({x.get(), y.get()}).second) return true;
    return x->action() == y->action() &&
           self(self, x->then_branch(), y->then_branch()) &&
           self(self, x->else_branch(), y->else_branch());
  };
  return go(go, a, b);
}

std::size_t depth(const FiniteThread::Ptr& t) {
  std::map<const FiniteThread*, std::size_t> memo;
  auto go = [&](auto&& self, const FiniteThread::Ptr& x) -> std::size_t {
    if (x->kind() != NodeKind::Branch) return 0;
    auto it = memo.find(x.get());
    if (it != memo.end()) return it->second;
    const std::size_t d =
        std::max(self(self, x->then_branch()), self(self, x->else_branch())) +
        1;
    memo[x.get()] = d;
    return d;
  };
  return go(go, t);
}

FiniteThread::Ptr proj(std::size_t n, const RegularThread& t) {
  // Level k trees for every node, built bottom-up; sharing keeps this
  // linear in n * |nodes|.
  std::vector<FiniteThread::Ptr> level(t.size(), FiniteThread::dead());
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<FiniteThread::Ptr> next(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      const RegularThread::Node& node = t.node(i);
      switch (node.kind) {
        case NodeKind::Stop: next[i] = FiniteThread::stop(); break;
        case NodeKind::Dead: next[i] = FiniteThread::dead(); break;
        case NodeKind::Branch:
          next[i] = FiniteThread::branch(*node.action, level[node.next_then],
                                         level[node.next_else]);
          break;
      }
    }
    level = std::move(next);
  }
  return level[t.root()];
}

RegularThread thread_from_tree(const FiniteThread::Ptr& tree) {
  RegularThread::Builder b;
  std::map<const FiniteThread*, std::size_t> ids;
  auto go = [&](auto&& self, const FiniteThread::Ptr& x) -> std::size_t {
    auto it = ids.find(x.get());
    if (it != ids.end()) return it->second;
    std::size_t id;
    switch (x->kind()) {
      case NodeKind::Stop: id = b.add_stop(); break;
      case NodeKind::Dead: id = b.add_dead(); break;
      case NodeKind::Branch: {
        const std::size_t then_id = self(self, x->then_branch());
        const std::size_t else_id = self(self, x->else_branch());
        id = b.add_branch(x->action(), then_id, else_id);
        break;
      }
      default: throw std::logic_error("unreachable");
    }
    ids[x.get()] = id;
    return id;
  };
  const std::size_t root = go(go, tree);
  return std::move(b).build(root);
}

FiniteThread::Ptr to_finite_tree(const RegularThread& t) {
  std::vector<int> state(t.size(), 0);  // 0 new, 1 on path, 2 done
  std::vector<FiniteThread::Ptr> memo(t.size());
  auto go = [&](auto&& self, std::size_t id) -> FiniteThread::Ptr {
    if (state[id] == 1)
      throw std::invalid_argument("thread graph has a cycle");
    if (state[id] == 2) return memo[id];
    const RegularThread::Node& node = t.node(id);
    FiniteThread::Ptr result;
    switch (node.kind) {
      case NodeKind::Stop: result = FiniteThread::stop(); break;
      case NodeKind::Dead: result = FiniteThread::dead(); break;
      case NodeKind::Branch: {
        state[id] = 1;
        FiniteThread::Ptr then_tree = self(self, node.next_then);
        FiniteThread::Ptr else_tree = self(self, node.next_else);
        result = FiniteThread::branch(*node.action, std::move(then_tree),
                                      std::move(else_tree));
        break;
      }
    }
    state[id] = 2;
    memo[id] = result;
    return result;
  };
  return go(go, t.root());
}

RegularThread tau_normalize(const RegularThread& t) {
  RegularThread::Builder b;
  for (const RegularThread::Node& node : t.nodes()) {
    switch (node.kind) {
      case NodeKind::Stop: b.add_stop(); break;
      case NodeKind::Dead: b.add_dead(); break;
      case NodeKind::Branch: {
        const std::size_t next_else =
            node.action->is_tau() ? node.next_then : node.next_else;
        b.add_branch(*node.action, node.next_then, next_else);
        break;
      }
    }
  }
  return std::move(b).build(t.root());
}

// ---------------------------------------------------------------------------
// Bisimilarity by partition refinement

BisimResult check_bisimilar(const RegularThread& a0, const RegularThread& b0) {
  const RegularThread a = tau_normalize(a0);
  const RegularThread b = tau_normalize(b0);
  const std::size_t total = a.size() + b.size();
  auto node_of = [&](std::size_t i) -> const RegularThread::Node& {
    return i < a.size() ? a.node(i) : b.node(i - a.size());
  };
  const std::size_t root_a = a.root();
  const std::size_t root_b = a.size() + b.root();

  // Class index per node; one class at depth 0 (every projection is D).
  std::vector<std::size_t> cls(total, 0);
  for (std::size_t level = 1; level <= total + 1; ++level) {
    // Key: kind, action text, successor classes at the previous level.
    std::map<std::tuple<int, std::string, std::size_t, std::size_t>,
             std::size_t>
        classes;
    std::vector<std::size_t> next(total);
    for (std::size_t i = 0; i < total; ++i) {
      const RegularThread::Node& node = node_of(i);
      std::tuple<int, std::string, std::size_t, std::size_t> key;
      switch (node.kind) {
        case NodeKind::Stop: key = {0, "", 0, 0}; break;
        case NodeKind::Dead: key = {1, "", 0, 0}; break;
        case NodeKind::Branch: {
          const std::size_t then_cls = cls[node.next_then +
                                           (i < a.size() ? 0 : a.size())];
          const std::size_t else_cls = cls[node.next_else +
                                           (i < a.size() ? 0 : a.size())];
          key = {2, node.action->text(), then_cls, else_cls};
          break;
        }
      }
      auto [it, inserted] = classes.emplace(key, classes.size());
      next[i] = it->second;
    }
    if (next[root_a] != next[root_b])
      return {false, level};
    if (next == cls) break;
    cls = std::move(next);
  }
  return {true, std::nullopt};
}

bool bisimilar(const RegularThread& a, const RegularThread& b) {
  return check_bisimilar(a, b).equivalent;
}

// ---------------------------------------------------------------------------
// Recursion equations

ThreadTerm ThreadTerm::stop() {
  return ThreadTerm(std::make_shared<const Impl>(
      Impl{Kind::Stop, "", std::nullopt, nullptr, nullptr}));
}

ThreadTerm ThreadTerm::dead() {
  return ThreadTerm(std::make_shared<const Impl>(
      Impl{Kind::Dead, "", std::nullopt, nullptr, nullptr}));
}

ThreadTerm ThreadTerm::var(std::string name) {
  return ThreadTerm(std::make_shared<const Impl>(
      Impl{Kind::Var, std::move(name), std::nullopt, nullptr, nullptr}));
}

ThreadTerm ThreadTerm::branch(Action action, ThreadTerm then_term,
                              ThreadTerm else_term) {
  return ThreadTerm(std::make_shared<const Impl>(Impl{
      Kind::Branch, "", std::move(action),
      std::make_shared<const ThreadTerm>(std::move(then_term)),
      std::make_shared<const ThreadTerm>(std::move(else_term))}));
}

RegularThread thread_from_equations(
    const std::vector<std::pair<std::string, ThreadTerm>>& equations,
    const std::string& root) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < equations.size(); ++i) {
    if (!index.emplace(equations[i].first, i).second)
      throw std::invalid_argument("duplicate equation for variable '" +
                                  equations[i].first + "'");
  }
  auto lookup = [&](const std::string& name) -> std::size_t {
    auto it = index.find(name);
    if (it == index.end())
      throw std::invalid_argument("undefined variable '" + name + "'");
    return it->second;
  };

  RegularThread::Builder b;
  const std::size_t dead_node = b.add_dead();

  // Resolve equations whose right-hand side is a bare variable; cycles of
  // bare variables are unproductive and denote D.
  // resolved[i]: the equation index whose right-hand side is not a bare
  // variable, or SIZE_MAX when the chain is a cycle.
  std::vector<std::optional<std::size_t>> resolved(equations.size());
  auto resolve_alias = [&](auto&& self, std::size_t i) -> std::size_t {
    if (resolved[i]) return *resolved[i];
    if (equations[i].second.kind() != ThreadTerm::Kind::Var) {
      resolved[i] = i;
      return i;
    }
    resolved[i] = SIZE_MAX;  // on-path marker; sticks for cycles
    const std::size_t target = self(self, lookup(equations[i].second.name()));
    resolved[i] = target;
    return target;
  };

  // One deferred node per non-alias equation.
  std::vector<std::size_t> node_of(equations.size(), SIZE_MAX);
  for (std::size_t i = 0; i < equations.size(); ++i) {
    const ThreadTerm& term = equations[i].second;
    switch (term.kind()) {
      case ThreadTerm::Kind::Stop: node_of[i] = b.add_stop(); break;
      case ThreadTerm::Kind::Dead: node_of[i] = b.add_dead(); break;
      case ThreadTerm::Kind::Branch:
        node_of[i] = b.add_branch_deferred(term.action());
        break;
      case ThreadTerm::Kind::Var: break;
    }
  }
  auto equation_node = [&](std::size_t i) -> std::size_t {
    const std::size_t target = resolve_alias(resolve_alias, i);
    return target == SIZE_MAX ? dead_node : node_of[target];
  };

  auto term_node = [&](auto&& self, const ThreadTerm& term) -> std::size_t {
    switch (term.kind()) {
      case ThreadTerm::Kind::Stop: return b.add_stop();
      case ThreadTerm::Kind::Dead: return b.add_dead();
      case ThreadTerm::Kind::Var: return equation_node(lookup(term.name()));
      case ThreadTerm::Kind::Branch: {
        const std::size_t node = b.add_branch_deferred(term.action());
        const std::size_t then_node = self(self, term.then_term());
        const std::size_t else_node = self(self, term.else_term());
        b.set_successors(node, then_node, else_node);
        return node;
      }
    }
    throw std::logic_error("unreachable");
  };

  for (std::size_t i = 0; i < equations.size(); ++i) {
    const ThreadTerm& term = equations[i].second;
    if (term.kind() != ThreadTerm::Kind::Branch) continue;
    const std::size_t then_node = term_node(term_node, term.then_term());
    const std::size_t else_node = term_node(term_node, term.else_term());
    b.set_successors(node_of[i], then_node, else_node);
  }
  return std::move(b).build(equation_node(lookup(root)));
}

// ---------------------------------------------------------------------------
// Export

std::string thread_text(const RegularThread& t) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const RegularThread::Node& node = t.node(i);
    out << i << ": ";
    switch (node.kind) {
      case NodeKind::Stop: out << "S"; break;
      case NodeKind::Dead: out << "D"; break;
      case NodeKind::Branch:
        out << node.action->text() << " ? " << node.next_then << " : "
            << node.next_else;
        break;
    }
    out << '\n';
  }
  return out.str();
}

std::string thread_dot(const RegularThread& t) {
  std::ostringstream out;
  out << "digraph thread {\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    const RegularThread::Node& node = t.node(i);
    switch (node.kind) {
      case NodeKind::Stop:
        out << "  n" << i << " [label=\"S\",shape=box];\n";
        break;
      case NodeKind::Dead:
        out << "  n" << i << " [label=\"D\",shape=box];\n";
        break;
      case NodeKind::Branch:
        out << "  n" << i << " [label=\"" << node.action->text() << "\"];\n";
        out << "  n" << i << " -> n" << node.next_then << " [label=\"1\"];\n";
        out << "  n" << i << " -> n" << node.next_else
            << " [label=\"0\",style=dashed];\n";
        break;
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace pgaram
