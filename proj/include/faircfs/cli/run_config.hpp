#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "faircfs/eval/cross_validation.hpp"
#include "faircfs/fair/selector.hpp"

namespace faircfs::cli {

// Fully resolved settings of one CLI run. Every field has a pinned default;
// reports embed to_json() so a run can be repeated from its output.
struct RunConfig {
  std::string command;
  std::string data;
  std::string schema;
  std::string out;  // not embedded: a rerun may write elsewhere
  std::uint64_t seed = 1;

  double alpha = 0.01;
  double reliability = 10.0;
  std::string unreliable_policy = "independent";  // citest only
  std::string mb_alg = "hiton-mb";
  int max_k = 3;
  std::optional<int> max_z;
  bool extended_search = false;

  std::string classifier = "nb";
  std::string selector = "faircfs";
  int folds = 10;
  int knn_k = 5;
  int threads = 1;

  // synth
  std::string bn;
  bool testbed = false;
  std::size_t rows = 20000;

  // citest
  std::string x;
  std::string y;
  std::string z;  // comma-separated column names

  nlohmann::ordered_json to_json() const;
  // Overwrites the fields present in `j`.
  void merge_json(const nlohmann::json& j);

  // Throws ConfigError on out-of-range values or unknown names.
  void validate() const;
  fair::FairCfsConfig fair_config() const;
  eval::EvalConfig eval_config() const;
};

}  // namespace faircfs::cli
