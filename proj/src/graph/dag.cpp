#include "faircfs/graph/dag.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <stdexcept>

namespace faircfs::graph {

std::vector<int> topological_order(int n_nodes, const std::vector<VarSet>& parents) {
  std::vector<int> missing(static_cast<std::size_t>(n_nodes), 0);
  std::vector<VarSet> children(static_cast<std::size_t>(n_nodes));
  for (int v = 0; v < n_nodes; ++v) {
    for (int p : parents[static_cast<std::size_t>(v)]) {
      ++missing[static_cast<std::size_t>(v)];
      children[static_cast<std::size_t>(p)].push_back(v);
    }
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < n_nodes; ++v) {
    if (missing[static_cast<std::size_t>(v)] == 0) ready.push(v);
  }
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n_nodes));
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int c : children[static_cast<std::size_t>(v)]) {
      if (--missing[static_cast<std::size_t>(c)] == 0) ready.push(c);
    }
  }
  if (static_cast<int>(order.size()) != n_nodes) throw std::invalid_argument("graph contains a cycle");
  return order;
}

Dag::Dag(std::vector<std::string> names, std::vector<VarSet> parents)
    : names_(std::move(names)), parents_(std::move(parents)) {
  const int n = static_cast<int>(parents_.size());
  if (names_.size() != parents_.size()) throw std::invalid_argument("Dag: names and parents differ in length");
  children_.assign(parents_.size(), {});
  for (int v = 0; v < n; ++v) {
    auto& ps = parents_[static_cast<std::size_t>(v)];
    std::sort(ps.begin(), ps.end());
    if (std::adjacent_find(ps.begin(), ps.end()) != ps.end()) {
      throw std::invalid_argument("Dag: duplicate edge into '" + names_[static_cast<std::size_t>(v)] + "'");
    }
    for (int p : ps) {
      if (p < 0 || p >= n) throw std::out_of_range("Dag: parent id out of range");
      if (p == v) throw std::invalid_argument("Dag: self-loop on '" + names_[static_cast<std::size_t>(v)] + "'");
      children_[static_cast<std::size_t>(p)].push_back(v);
    }
  }
  order_ = graph::topological_order(n, parents_);
}

Dag Dag::from_edges(std::vector<std::string> names, const std::vector<Edge>& edges) {
  std::vector<VarSet> parents(names.size());
  for (auto [from, to] : edges) {
    if (to < 0 || static_cast<std::size_t>(to) >= names.size()) throw std::out_of_range("Dag: edge endpoint out of range");
    parents[static_cast<std::size_t>(to)].push_back(from);
  }
  return Dag(std::move(names), std::move(parents));
}

Dag Dag::from_edges(int n_nodes, const std::vector<Edge>& edges) {
  std::vector<std::string> names;
  for (int v = 0; v < n_nodes; ++v) names.push_back("X" + std::to_string(v));
  return from_edges(std::move(names), edges);
}

int Dag::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::out_of_range("unknown node '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

void Dag::check_node(int v) const {
  if (v < 0 || v >= n_nodes()) throw std::out_of_range("node id " + std::to_string(v) + " out of range");
}

bool Dag::has_edge(int from, int to) const { return data::contains(parents(to), from); }

std::vector<Edge> Dag::edges() const {
  std::vector<Edge> out;
  for (int v = 0; v < n_nodes(); ++v) {
    for (int p : parents(v)) out.emplace_back(p, v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

VarSet Dag::descendants(int v) const {
  check_node(v);
  std::vector<bool> seen(static_cast<std::size_t>(n_nodes()), false);
  std::vector<int> stack{v};
  VarSet out;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int c : children(u)) {
      if (seen[static_cast<std::size_t>(c)]) continue;
      seen[static_cast<std::size_t>(c)] = true;
      out.push_back(c);
      stack.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool d_separated(const Dag& g, int x, int y, const VarSet& z) {
  g.check_node(x);
  g.check_node(y);
  if (x == y) throw std::invalid_argument("d_separated: x and y must differ");
  const auto n = static_cast<std::size_t>(g.n_nodes());
  std::vector<bool> in_z(n, false);
  for (int v : z) {
    g.check_node(v);
    if (v == x || v == y) throw std::invalid_argument("d_separated: conditioning set contains an endpoint");
    in_z[static_cast<std::size_t>(v)] = true;
  }

  // Z together with its ancestors: the colliders that are opened.
  std::vector<bool> opens(n, false);
  std::vector<int> stack(z.begin(), z.end());
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (opens[static_cast<std::size_t>(v)]) continue;
    opens[static_cast<std::size_t>(v)] = true;
    for (int p : g.parents(v)) stack.push_back(p);
  }

  // Walk (node, arrived_from_child) states.
  std::vector<bool> seen_up(n, false), seen_down(n, false);
  std::deque<std::pair<int, bool>> queue{{x, true}};
  while (!queue.empty()) {
    const auto [v, up] = queue.front();
    queue.pop_front();
    auto& seen = up ? seen_up : seen_down;
    if (seen[static_cast<std::size_t>(v)]) continue;
    seen[static_cast<std::size_t>(v)] = true;
    const bool blocked = in_z[static_cast<std::size_t>(v)];
    if (!blocked && v == y) return false;
    if (up) {
      if (blocked) continue;
      for (int p : g.parents(v)) queue.emplace_back(p, true);
      for (int c : g.children(v)) queue.emplace_back(c, false);
    } else {
      if (!blocked) {
        for (int c : g.children(v)) queue.emplace_back(c, false);
      }
      if (opens[static_cast<std::size_t>(v)]) {
        for (int p : g.parents(v)) queue.emplace_back(p, true);
      }
    }
  }
  return true;
}

VarSet parents_and_children(const Dag& g, int v) {
  g.check_node(v);
  return data::set_union(g.parents(v), data::make_set(g.children(v)));
}

VarSet true_mb(const Dag& g, int v) {
  std::vector<int> mb = parents_and_children(g, v);
  for (int c : g.children(v)) {
    for (int p : g.parents(c)) {
      if (p != v) mb.push_back(p);
    }
  }
  return data::make_set(std::move(mb));
}

Dag mutilate(const Dag& g, int s) {
  g.check_node(s);
  std::vector<VarSet> parents;
  for (int v = 0; v < g.n_nodes(); ++v) parents.push_back(v == s ? VarSet{} : g.parents(v));
  return Dag(g.names(), std::move(parents));
}

}  // namespace faircfs::graph
