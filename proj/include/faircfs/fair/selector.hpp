#pragma once

#include <map>
#include <optional>
#include <string>

#include "faircfs/citest/g2.hpp"
#include "faircfs/data/dataset.hpp"
#include "faircfs/mb/markov_blanket.hpp"

namespace faircfs::fair {

using data::VarSet;

enum class RejectionReason { dependent_given_mbs, no_witness_subset, unreliable_test };

std::string to_string(RejectionReason r);

struct FairCfsConfig {
  mb::Algorithm algorithm = mb::Algorithm::hiton_mb;
  citest::CiConfig ci{};
  int max_k = 3;
  // Largest witness tried in the subset search; nullopt means |MB_S| - 1,
  // every subset of MB_S without the candidate.
  std::optional<int> max_z;
  // Also give candidates that fail the full-MB_S test the subset search.
  bool extended_search = false;
  // Run the two blanket discoveries concurrently.
  bool parallel = false;
};

struct ScreenResult {
  VarSet passed;
  std::map<int, VarSet> witnesses;
  std::map<int, RejectionReason> failures;
  std::size_t tests_performed = 0;
};

// Keeps candidates that a reliable test finds independent of s given all of
// mb_s. Candidates must lie outside mb_s.
ScreenResult step2_screen(const data::Dataset& d, const VarSet& candidates, const VarSet& mb_s, int s,
                          const FairCfsConfig& cfg);

// Keeps candidates that a reliable test finds independent of s given some
// subset of mb_s without the candidate, searched smallest first.
ScreenResult step3_screen(const data::Dataset& d, const VarSet& candidates, const VarSet& mb_s, int s,
                          const FairCfsConfig& cfg);

struct FairSelection {
  VarSet mb_y;
  VarSet mb_s;
  VarSet m1;
  VarSet m2;
  std::map<int, VarSet> witnesses;
  std::map<int, RejectionReason> rejected;
  std::size_t tests_performed = 0;
  bool empty_mb_y = false;

  VarSet selected() const { return data::set_union(m1, m2); }
};

// Discovers MB(Y) and MB(S), screens MB(Y) \ MB(S) against the full MB(S)
// and MB(Y) ∩ MB(S) against its subsets.
FairSelection select_fair_features(const data::Dataset& d, const FairCfsConfig& cfg);

}  // namespace faircfs::fair
