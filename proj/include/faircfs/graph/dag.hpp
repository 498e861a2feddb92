#pragma once

#include <string>
#include <utility>
#include <vector>

#include "faircfs/data/dataset.hpp"

namespace faircfs::graph {

using data::VarSet;
using Edge = std::pair<int, int>;  // (from, to)

// Directed acyclic graph with sorted parent lists. Construction rejects
// self-loops, duplicate edges and cycles.
class Dag {
 public:
  Dag() = default;
  Dag(std::vector<std::string> names, std::vector<VarSet> parents);
  static Dag from_edges(std::vector<std::string> names, const std::vector<Edge>& edges);
  // Unnamed nodes are called X0, X1, ...
  static Dag from_edges(int n_nodes, const std::vector<Edge>& edges);

  int n_nodes() const { return static_cast<int>(parents_.size()); }
  const VarSet& parents(int v) const { return parents_.at(static_cast<std::size_t>(v)); }
  const VarSet& children(int v) const { return children_.at(static_cast<std::size_t>(v)); }
  const std::string& name(int v) const { return names_.at(static_cast<std::size_t>(v)); }
  const std::vector<std::string>& names() const { return names_; }
  int index_of(const std::string& name) const;
  bool has_edge(int from, int to) const;
  std::vector<Edge> edges() const;
  // Nodes reachable by directed paths from v, excluding v.
  VarSet descendants(int v) const;
  void check_node(int v) const;

  // Nodes in an order where every parent precedes its children; ties go to
  // the smallest id.
  const std::vector<int>& topological_order() const { return order_; }

  friend bool operator==(const Dag& a, const Dag& b) {
    return a.names_ == b.names_ && a.parents_ == b.parents_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<VarSet> parents_;
  std::vector<VarSet> children_;
  std::vector<int> order_;
};

// Kahn's algorithm with a min-heap. Throws std::invalid_argument on a cycle.
std::vector<int> topological_order(int n_nodes, const std::vector<VarSet>& parents);

// Whether z blocks every path between x and y (reachability form of the
// Bayes-ball rules; colliders open when they or a descendant are in z).
bool d_separated(const Dag& g, int x, int y, const VarSet& z);

// Parents, children and spouses of v.
VarSet true_mb(const Dag& g, int v);
VarSet parents_and_children(const Dag& g, int v);

// Copy of g with every edge into s removed.
Dag mutilate(const Dag& g, int s);

}  // namespace faircfs::graph
