#pragma once

#include <cstdint>

#include "faircfs/graph/bayes_net.hpp"

namespace faircfs::graph {

struct RandomNetworkConfig {
  int n_nodes = 10;
  double edge_probability = 0.3;
  int min_arity = 2;
  int max_arity = 3;
};

// Erdos-Renyi DAG over a random node order.
Dag random_dag(int n_nodes, double edge_probability, std::uint64_t seed);

// Random DAG with uniform random arities and CPT rows drawn from a flat
// Dirichlet(1, ..., 1).
BayesNet random_bayes_net(const RandomNetworkConfig& cfg, std::uint64_t seed);

}  // namespace faircfs::graph
