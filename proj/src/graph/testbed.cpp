#include "faircfs/graph/testbed.hpp"

#include <cmath>
#include <initializer_list>

namespace faircfs::graph {
namespace {

enum Node : int { Y, S, X1, X2, X3, X4, S5, X6, X7, X10, X11, X12, kNodeCount };

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Binary CPT with P(node = 1 | parents) = logistic(bias + sum w_i * parent_i),
// rows in mixed-radix parent order (last parent fastest).
std::vector<std::vector<double>> logistic_cpt(double bias, std::initializer_list<double> weights) {
  const std::vector<double> w(weights);
  const std::size_t configs = std::size_t{1} << w.size();
  std::vector<std::vector<double>> rows;
  for (std::size_t cfg = 0; cfg < configs; ++cfg) {
    double z = bias;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if ((cfg >> (w.size() - 1 - i)) & 1U) z += w[i];
    }
    const double p = logistic(z);
    rows.push_back({1.0 - p, p});
  }
  return rows;
}

}  // namespace

std::string to_string(TestbedRole r) {
  switch (r) {
    case TestbedRole::label: return "label";
    case TestbedRole::sensitive: return "sensitive";
    case TestbedRole::blocked_by_mbs: return "blocked_by_mbs";
    case TestbedRole::blocked_by_subset: return "blocked_by_subset";
    case TestbedRole::unblockable: return "unblockable";
    case TestbedRole::outside_mb_y: return "outside_mb_y";
    case TestbedRole::other: return "other";
  }
  return "other";
}

Testbed builtin_testbed() {
  std::vector<std::string> names = {"Y", "S", "X1", "X2", "X3", "X4", "S5", "X6", "X7", "X10", "X11", "X12"};
  // Parent lists are ascending by id, matching the Dag's CPT layout.
  std::vector<VarSet> parents(kNodeCount);
  parents[Y] = {X1, X2, X4};
  parents[S] = {X7};
  parents[X1] = {X10};
  parents[X3] = {Y};
  parents[S5] = {Y, S, X4};
  parents[X6] = {Y, S, X7};
  parents[X7] = {X12};
  parents[X11] = {X3};

  Testbed tb;
  tb.bn.dag = Dag(names, parents);
  tb.bn.arities.assign(kNodeCount, 2);
  tb.bn.cpts.resize(kNodeCount);
  auto& cpt = tb.bn.cpts;
  cpt[Y] = logistic_cpt(-2.25, {1.5, 1.5, 1.5});
  cpt[S] = logistic_cpt(-0.8, {1.6});
  cpt[X1] = logistic_cpt(-1.1, {2.2});
  cpt[X2] = logistic_cpt(0.0, {});
  cpt[X3] = logistic_cpt(-1.4, {2.8});
  cpt[X4] = logistic_cpt(0.0, {});
  cpt[S5] = logistic_cpt(-3.0, {2.5, 2.5, 1.5});
  cpt[X6] = logistic_cpt(-2.5, {2.0, 2.5, 1.0});
  cpt[X7] = logistic_cpt(-1.1, {2.2});
  cpt[X10] = logistic_cpt(0.0, {});
  cpt[X11] = logistic_cpt(-1.4, {2.8});
  cpt[X12] = logistic_cpt(0.0, {});
  tb.bn.sensitive = S;
  tb.bn.label = Y;
  tb.bn.validate();

  tb.label = Y;
  tb.sensitive = S;
  tb.s5 = S5;
  tb.expected_fair_set = {X1, X2, X3, X4};
  tb.roles = {
      {Y, TestbedRole::label},
      {S, TestbedRole::sensitive},
      {X1, TestbedRole::blocked_by_mbs},
      {X2, TestbedRole::blocked_by_mbs},
      {X3, TestbedRole::blocked_by_mbs},
      {X4, TestbedRole::blocked_by_subset},
      {S5, TestbedRole::unblockable},
      {X6, TestbedRole::unblockable},
      {X7, TestbedRole::unblockable},
      {X10, TestbedRole::outside_mb_y},
      {X11, TestbedRole::outside_mb_y},
      {X12, TestbedRole::outside_mb_y},
  };
  return tb;
}

}  // namespace faircfs::graph
