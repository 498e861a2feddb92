#include "faircfs/graph/oracle.hpp"

#include <stdexcept>

#include "faircfs/subsets.hpp"

namespace faircfs::graph {

OracleFairResult oracle_fair_set(const Dag& g, int y, int s, std::optional<std::size_t> max_z) {
  g.check_node(y);
  g.check_node(s);
  if (y == s) throw std::invalid_argument("oracle_fair_set: label and sensitive node must differ");
  const VarSet mb_y = true_mb(g, y);
  const VarSet mb_s = true_mb(g, s);
  const std::size_t cap = max_z.value_or(mb_s.size());

  OracleFairResult out;
  for (int x : mb_y) {
    if (x == s) continue;
    const VarSet pool = data::set_difference(mb_s, {x});
    for_each_subset(pool, cap, [&](const VarSet& z) {
      if (!d_separated(g, x, s, z)) return false;
      out.fair_set.push_back(x);
      out.witness.emplace(x, z);
      return true;
    });
  }
  return out;
}

}  // namespace faircfs::graph
