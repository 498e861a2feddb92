#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "faircfs/eval/classifiers.hpp"
#include "faircfs/fair/selector.hpp"

namespace faircfs::eval {

enum class SelectorKind { faircfs, mb_only, all_features };
std::string to_string(SelectorKind s);
SelectorKind parse_selector(const std::string& name);

// Feature set chosen on `train`; never contains the sensitive or label column.
VarSet select_features(const Dataset& train, SelectorKind selector, const fair::FairCfsConfig& cfg);

struct EvalConfig {
  SelectorKind selector = SelectorKind::faircfs;
  ClassifierKind classifier = ClassifierKind::nb;
  int folds = 10;
  std::uint64_t seed = 1;
  fair::FairCfsConfig fair{};
  ClassifierParams classifier_params{};
  int threads = 1;
};

struct FoldResult {
  int fold = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  VarSet selected;
  double acc = 0.0;
  std::optional<double> spd;
  std::optional<double> pe;
  bool empty_selection = false;     // prior-only predictor used
  bool constant_predictor = false;  // training labels held one class
};

struct EvalReport {
  SelectorKind selector = SelectorKind::faircfs;
  ClassifierKind classifier = ClassifierKind::nb;
  std::vector<FoldResult> per_fold;
  double mean_acc = 0.0;
  // Means over folds where the metric is defined.
  std::optional<double> mean_spd;
  std::optional<double> mean_pe;
};

// Arithmetic mean in fold order over defined values.
std::optional<double> fold_mean(const std::vector<std::optional<double>>& values);

// Stratified k-fold protocol: select on the training split, fit on the
// selection, score the held-out split.
EvalReport cross_validate(const Dataset& d, const EvalConfig& cfg);

// One row per fold plus a trailing mean row.
std::string to_csv(const EvalReport& report, const Dataset& d);

}  // namespace faircfs::eval
