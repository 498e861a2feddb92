#include "faircfs/graph/random_network.hpp"

#include <numeric>
#include <stdexcept>

#include "faircfs/random.hpp"

namespace faircfs::graph {

Dag random_dag(int n_nodes, double edge_probability, std::uint64_t seed) {
  if (n_nodes < 1) throw std::invalid_argument("random_dag: need at least one node");
  Rng rng(seed);
  std::vector<int> order(static_cast<std::size_t>(n_nodes));
  std::iota(order.begin(), order.end(), 0);
  shuffle(std::span<int>(order), rng);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (uniform01(rng) < edge_probability) edges.emplace_back(order[i], order[j]);
    }
  }
  return Dag::from_edges(n_nodes, edges);
}

BayesNet random_bayes_net(const RandomNetworkConfig& cfg, std::uint64_t seed) {
  if (cfg.min_arity < 2 || cfg.max_arity < cfg.min_arity) throw std::invalid_argument("random_bayes_net: bad arity range");
  BayesNet bn;
  bn.dag = random_dag(cfg.n_nodes, cfg.edge_probability, seed);
  // Separate stream so arities and CPTs do not shift the graph draw.
  Rng rng(seed ^ 0x9E3779B97F4A7C15ULL);
  const auto span = static_cast<std::uint64_t>(cfg.max_arity - cfg.min_arity + 1);
  for (int v = 0; v < cfg.n_nodes; ++v) bn.arities.push_back(cfg.min_arity + static_cast<int>(uniform_index(rng, span)));
  for (int v = 0; v < cfg.n_nodes; ++v) {
    std::vector<std::vector<double>> table(bn.n_parent_configs(v));
    for (auto& row : table) {
      row.resize(static_cast<std::size_t>(bn.arities[static_cast<std::size_t>(v)]));
      double total = 0.0;
      for (auto& p : row) total += (p = exponential(rng));
      for (auto& p : row) p /= total;
    }
    bn.cpts.push_back(std::move(table));
  }
  return bn;
}

}  // namespace faircfs::graph
