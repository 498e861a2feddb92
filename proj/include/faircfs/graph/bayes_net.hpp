#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "faircfs/data/dataset.hpp"
#include "faircfs/graph/dag.hpp"

namespace faircfs::graph {

// Discrete Bayesian network. cpts[v] holds one probability row per parent
// configuration; configurations are mixed-radix with the last parent
// varying fastest, and each row has arities[v] entries summing to 1.
struct BayesNet {
  Dag dag;
  std::vector<int> arities;
  std::vector<std::vector<std::vector<double>>> cpts;
  // Optional roles carried by the text format.
  std::optional<int> sensitive;
  std::optional<int> label;

  // Throws DataError on shape or probability violations.
  void validate() const;
  std::size_t n_parent_configs(int v) const;
  std::size_t parent_config(int v, const std::vector<int>& values) const;
};

// Ancestral sampling in topological order. Columns follow node order and
// carry the network's roles when both are set.
data::Dataset sample(const BayesNet& bn, std::size_t n, std::uint64_t seed);

// Text format, one node per line:
//
//   node <name> <arity> [parents <p1> <p2> ...] cpt <p...>
//   sensitive <name>
//   label <name>
//
// cpt lists the rows back to back in parent-configuration order.
BayesNet parse_bayes_net(const std::string& text);
BayesNet read_bayes_net(const std::filesystem::path& path);
std::string format_bayes_net(const BayesNet& bn);

}  // namespace faircfs::graph
