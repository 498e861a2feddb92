#pragma once

#include <cstddef>
#include <map>
#include <optional>

#include "faircfs/graph/dag.hpp"

namespace faircfs::graph {

struct OracleFairResult {
  VarSet fair_set;
  std::map<int, VarSet> witness;
};

// Members X of MB(y) \ {s} for which some Z subset of MB(s) \ {X} with
// |Z| <= max_z d-separates X from s. Subsets are tried by size, then
// lexicographically, and the first success is the recorded witness.
// max_z defaults to |MB(s)|.
OracleFairResult oracle_fair_set(const Dag& g, int y, int s, std::optional<std::size_t> max_z = std::nullopt);

}  // namespace faircfs::graph
