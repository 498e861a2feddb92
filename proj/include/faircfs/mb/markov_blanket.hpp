#pragma once

#include <cstddef>
#include <string>

#include "faircfs/citest/g2.hpp"
#include "faircfs/data/dataset.hpp"

namespace faircfs::mb {

using data::VarSet;

enum class Algorithm { iamb, hiton_mb };

std::string to_string(Algorithm a);
// Accepts "iamb" and "hiton-mb"; throws ConfigError otherwise.
Algorithm parse_algorithm(const std::string& name);

struct MbConfig {
  citest::CiConfig ci{};
  // Largest conditioning set HITON-PC tries when eliminating candidates.
  int max_k = 3;
};

struct MbResult {
  int target = 0;
  VarSet blanket;
  std::size_t tests_performed = 0;
  Algorithm algorithm = Algorithm::hiton_mb;
};

// Incremental association MB: grow by strongest association given the
// current blanket while dependent, then shrink members that are independent
// given the rest.
MbResult iamb(const data::Dataset& d, int target, const MbConfig& cfg);

// HITON-PC for the parents and children, then spouses: a non-adjacent u in
// PC(x) for x in PC(target) joins when it is dependent on the target given
// their separating set plus x.
MbResult hiton_mb(const data::Dataset& d, int target, const MbConfig& cfg);

// Parents-and-children set alone, as used by hiton_mb. Exposed for tests.
VarSet hiton_pc(citest::G2Test& test, int target, int max_k);

MbResult get_mb(const data::Dataset& d, int target, Algorithm algorithm, const MbConfig& cfg);

}  // namespace faircfs::mb
