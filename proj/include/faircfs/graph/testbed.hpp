#pragma once

#include <map>
#include <string>

#include "faircfs/graph/bayes_net.hpp"

namespace faircfs::graph {

enum class TestbedRole {
  label,
  sensitive,
  blocked_by_mbs,      // in MB(Y) \ MB(S), separated from S by MB(S)
  blocked_by_subset,   // in MB(Y) and MB(S), separated by a strict subset
  unblockable,         // in MB(Y), adjacent to S
  outside_mb_y,        // separable from S but not in MB(Y)
  other,
};

std::string to_string(TestbedRole r);

struct Testbed {
  BayesNet bn;
  int label = 0;
  int sensitive = 0;
  VarSet expected_fair_set;
  std::map<int, TestbedRole> roles;
  // Node playing the "child of both S and Y" role singled out in the
  // worked example as in MB(Y) yet unfair.
  int s5 = 0;
};

// Fixed binary network realizing the feature classes of the worked example.
// Every fair node is also marginally d-separated from S and d-separated from
// S given Y, so a classifier on the fair set has vanishing SPD and PE.
Testbed builtin_testbed();

}  // namespace faircfs::graph
