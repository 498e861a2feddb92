#include "faircfs/mb/markov_blanket.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>

#include "faircfs/error.hpp"
#include "faircfs/subsets.hpp"

namespace faircfs::mb {
namespace {

using citest::CiResult;
using citest::G2Test;

// Discovery never admits a variable on an untrustworthy test.
MbConfig discovery_config(MbConfig cfg) {
  cfg.ci.unreliable_policy = citest::UnreliablePolicy::independent;
  return cfg;
}

void check_target(const data::Dataset& d, int target) {
  if (target < 0 || target >= d.n_cols()) throw std::out_of_range("MB discovery: target index out of range");
}

struct Association {
  int var;
  CiResult result;
};

// Strongest first: p-value ascending, G2 descending, index ascending.
bool stronger(const Association& a, const Association& b) {
  return std::tie(a.result.p_value, b.result.g2, a.var) < std::tie(b.result.p_value, a.result.g2, b.var);
}

struct PcResult {
  VarSet pc;
  std::map<int, VarSet> sepset;
};

PcResult hiton_pc_with_sepsets(G2Test& test, int target, int max_k) {
  const auto& d = test.dataset();
  PcResult out;

  std::vector<Association> open;
  for (int v = 0; v < d.n_cols(); ++v) {
    if (v == target) continue;
    const auto r = test(target, v, {});
    if (r.independent) {
      out.sepset.emplace(v, VarSet{});
    } else {
      open.push_back({v, r});
    }
  }
  std::sort(open.begin(), open.end(), stronger);

  const auto k = static_cast<std::size_t>(std::max(max_k, 0));
  std::vector<int> cpc;  // admission order
  for (const auto& candidate : open) {
    const int c = candidate.var;
    cpc.push_back(c);

    // New member: every subset of the others. Old members: only subsets
    // containing c; the rest were cleared when they were admitted.
    std::vector<int> others;
    for (int v : cpc) {
      if (v != c) others.push_back(v);
    }
    VarSet sep;
    const bool removed = for_each_subset(others, k, [&](const std::vector<int>& z) {
      if (!test(target, c, z).independent) return false;
      sep = data::make_set(z);
      return true;
    });
    if (removed) {
      cpc.pop_back();
      out.sepset.emplace(c, sep);
      continue;
    }
    if (k == 0) continue;
    for (std::size_t i = 0; i < cpc.size();) {
      const int x = cpc[i];
      if (x == c) {
        ++i;
        continue;
      }
      std::vector<int> rest;
      for (int v : cpc) {
        if (v != x && v != c) rest.push_back(v);
      }
      const bool drop = for_each_subset(rest, k - 1, [&](const std::vector<int>& z) {
        auto cond = z;
        cond.push_back(c);
        if (!test(target, x, cond).independent) return false;
        sep = data::make_set(cond);
        return true;
      });
      if (drop) {
        cpc.erase(cpc.begin() + static_cast<std::ptrdiff_t>(i));
        out.sepset.emplace(x, sep);
      } else {
        ++i;
      }
    }
  }
  out.pc = data::make_set(cpc);
  return out;
}

}  // namespace

std::string to_string(Algorithm a) { return a == Algorithm::iamb ? "iamb" : "hiton-mb"; }

Algorithm parse_algorithm(const std::string& name) {
  if (name == "iamb") return Algorithm::iamb;
  if (name == "hiton-mb") return Algorithm::hiton_mb;
  throw ConfigError("unknown algorithm '" + name + "'");
}

VarSet hiton_pc(G2Test& test, int target, int max_k) { return hiton_pc_with_sepsets(test, target, max_k).pc; }

MbResult iamb(const data::Dataset& d, int target, const MbConfig& config) {
  check_target(d, target);
  const auto cfg = discovery_config(config);
  G2Test test(d, cfg.ci);

  VarSet blanket;
  // Grow.
  while (true) {
    std::optional<Association> best;
    for (int v = 0; v < d.n_cols(); ++v) {
      if (v == target || data::contains(blanket, v)) continue;
      const auto r = test(target, v, blanket);
      if (r.independent) continue;
      const Association a{v, r};
      if (!best || stronger(a, *best)) best = a;
    }
    if (!best) break;
    blanket = data::set_union(blanket, {best->var});
  }
  // Shrink until a full pass removes nothing.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < blanket.size();) {
      const int x = blanket[i];
      const VarSet rest = data::set_difference(blanket, {x});
      if (test(target, x, rest).independent) {
        blanket = rest;
        changed = true;
      } else {
        ++i;
      }
    }
  }
  return {target, blanket, test.tests_performed(), Algorithm::iamb};
}

MbResult hiton_mb(const data::Dataset& d, int target, const MbConfig& config) {
  check_target(d, target);
  const auto cfg = discovery_config(config);
  G2Test test(d, cfg.ci);

  const auto pc_t = hiton_pc_with_sepsets(test, target, cfg.max_k);
  VarSet blanket = pc_t.pc;
  for (int x : pc_t.pc) {
    const auto pc_x = hiton_pc_with_sepsets(test, x, cfg.max_k);
    for (int u : pc_x.pc) {
      if (u == target || data::contains(pc_t.pc, u) || data::contains(blanket, u)) continue;
      const auto sep = pc_t.sepset.find(u);
      VarSet cond = sep == pc_t.sepset.end() ? VarSet{} : sep->second;
      if (data::contains(cond, x)) continue;
      cond = data::set_union(cond, {x});
      if (!test(target, u, cond).independent) blanket = data::set_union(blanket, {u});
    }
  }
  return {target, blanket, test.tests_performed(), Algorithm::hiton_mb};
}

MbResult get_mb(const data::Dataset& d, int target, Algorithm algorithm, const MbConfig& cfg) {
  switch (algorithm) {
    case Algorithm::iamb: return iamb(d, target, cfg);
    case Algorithm::hiton_mb: return hiton_mb(d, target, cfg);
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace faircfs::mb
