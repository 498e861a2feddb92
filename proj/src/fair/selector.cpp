#include "faircfs/fair/selector.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

#include "faircfs/subsets.hpp"

namespace faircfs::fair {
namespace {

citest::CiConfig screening_config(citest::CiConfig ci) {
  ci.unreliable_policy = citest::UnreliablePolicy::dependent;
  return ci;
}

void check_columns(const data::Dataset& d, const VarSet& vars) {
  for (int v : vars) {
    if (v < 0 || v >= d.n_cols()) throw std::out_of_range("screen: column index out of range");
  }
}

// Subset search for one candidate; records a witness or a failure reason.
void search_subsets(citest::G2Test& test, int x, const VarSet& pool, int s, std::size_t cap, ScreenResult& out) {
  bool any_reliable = false;
  VarSet witness;
  const bool found = for_each_subset(pool, cap, [&](const VarSet& z) {
    const auto r = test(x, s, z);
    any_reliable = any_reliable || r.reliable;
    if (!r.independent) return false;
    witness = z;
    return true;
  });
  if (found) {
    out.passed.push_back(x);
    out.witnesses.emplace(x, witness);
  } else {
    out.failures.emplace(x, any_reliable ? RejectionReason::no_witness_subset : RejectionReason::unreliable_test);
  }
}

}  // namespace

std::string to_string(RejectionReason r) {
  switch (r) {
    case RejectionReason::dependent_given_mbs: return "dependent_given_mbs";
    case RejectionReason::no_witness_subset: return "no_witness_subset";
    case RejectionReason::unreliable_test: return "unreliable_test";
  }
  return "unknown";
}

ScreenResult step2_screen(const data::Dataset& d, const VarSet& candidates, const VarSet& mb_s, int s,
                          const FairCfsConfig& cfg) {
  check_columns(d, candidates);
  check_columns(d, mb_s);
  if (!data::set_intersection(candidates, mb_s).empty()) throw std::invalid_argument("step2_screen: candidates overlap MB_S");
  if (data::contains(candidates, s)) throw std::invalid_argument("step2_screen: sensitive column among candidates");

  citest::G2Test test(d, screening_config(cfg.ci));
  ScreenResult out;
  for (int x : candidates) {
    const auto r = test(x, s, mb_s);
    if (r.independent) {
      out.passed.push_back(x);
      out.witnesses.emplace(x, mb_s);
    } else {
      out.failures.emplace(x, r.reliable ? RejectionReason::dependent_given_mbs : RejectionReason::unreliable_test);
    }
  }
  out.tests_performed = test.tests_performed();
  return out;
}

ScreenResult step3_screen(const data::Dataset& d, const VarSet& candidates, const VarSet& mb_s, int s,
                          const FairCfsConfig& cfg) {
  check_columns(d, candidates);
  check_columns(d, mb_s);
  if (!data::set_difference(candidates, mb_s).empty()) throw std::invalid_argument("step3_screen: candidates must lie in MB_S");
  if (data::contains(mb_s, s)) throw std::invalid_argument("step3_screen: MB_S contains the sensitive column");

  citest::G2Test test(d, screening_config(cfg.ci));
  const std::size_t cap = cfg.max_z ? static_cast<std::size_t>(std::max(*cfg.max_z, 0))
                                    : (mb_s.empty() ? 0 : mb_s.size() - 1);
  ScreenResult out;
  for (int x : candidates) search_subsets(test, x, data::set_difference(mb_s, {x}), s, cap, out);
  out.tests_performed = test.tests_performed();
  return out;
}

FairSelection select_fair_features(const data::Dataset& d, const FairCfsConfig& cfg) {
  const int s = d.sensitive();
  const int y = d.label();
  const mb::MbConfig mb_cfg{cfg.ci, cfg.max_k};

  FairSelection sel;
  mb::MbResult mb_y, mb_s;
  if (cfg.parallel) {
    auto pending = std::async(std::launch::async, [&] { return mb::get_mb(d, s, cfg.algorithm, mb_cfg); });
    mb_y = mb::get_mb(d, y, cfg.algorithm, mb_cfg);
    mb_s = pending.get();
  } else {
    mb_y = mb::get_mb(d, y, cfg.algorithm, mb_cfg);
    mb_s = mb::get_mb(d, s, cfg.algorithm, mb_cfg);
  }
  sel.mb_y = mb_y.blanket;
  sel.mb_s = mb_s.blanket;
  sel.tests_performed = mb_y.tests_performed + mb_s.tests_performed;
  sel.empty_mb_y = sel.mb_y.empty();

  const VarSet pool = data::set_difference(sel.mb_y, {s});
  const VarSet step2_candidates = data::set_difference(pool, sel.mb_s);
  const VarSet step3_candidates = data::set_intersection(pool, sel.mb_s);

  const auto step2 = step2_screen(d, step2_candidates, sel.mb_s, s, cfg);
  const auto step3 = step3_screen(d, step3_candidates, sel.mb_s, s, cfg);
  sel.tests_performed += step2.tests_performed + step3.tests_performed;

  sel.m1 = step2.passed;
  sel.m2 = step3.passed;
  sel.witnesses.insert(step2.witnesses.begin(), step2.witnesses.end());
  sel.witnesses.insert(step3.witnesses.begin(), step3.witnesses.end());
  sel.rejected.insert(step3.failures.begin(), step3.failures.end());

  if (cfg.extended_search) {
    citest::G2Test test(d, screening_config(cfg.ci));
    const std::size_t cap = cfg.max_z ? static_cast<std::size_t>(std::max(*cfg.max_z, 0))
                                      : (sel.mb_s.empty() ? 0 : sel.mb_s.size() - 1);
    ScreenResult retry;
    for (const auto& [x, reason] : step2.failures) search_subsets(test, x, sel.mb_s, s, cap, retry);
    sel.m2 = data::set_union(sel.m2, data::make_set(retry.passed));
    sel.witnesses.insert(retry.witnesses.begin(), retry.witnesses.end());
    // Keep the original Step 2 reason for features that stay rejected.
    for (const auto& [x, reason] : step2.failures) {
      if (!retry.witnesses.contains(x)) sel.rejected.emplace(x, reason);
    }
    sel.tests_performed += test.tests_performed();
  } else {
    sel.rejected.insert(step2.failures.begin(), step2.failures.end());
  }
  return sel;
}

}  // namespace faircfs::fair
