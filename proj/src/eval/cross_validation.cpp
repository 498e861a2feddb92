#include "faircfs/eval/cross_validation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "faircfs/data/folds.hpp"
#include "faircfs/error.hpp"
#include "faircfs/eval/metrics.hpp"

namespace faircfs::eval {
namespace {

std::string format_metric(const std::optional<double>& v) {
  if (!v) return "NA";
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << *v;
  return out.str();
}

FoldResult run_fold(const Dataset& d, const data::FoldAssignment& folds, int fold, const EvalConfig& cfg) {
  const auto train_rows = folds.train_rows(fold);
  const auto test_rows = folds.test_rows(fold);
  const Dataset train = d.select_rows(train_rows);
  const Dataset test = d.select_rows(test_rows);

  FoldResult r;
  r.fold = fold;
  r.n_train = train.n_rows();
  r.n_test = test.n_rows();
  r.selected = select_features(train, cfg.selector, cfg.fair);

  Predictions pred;
  if (r.selected.empty()) {
    r.empty_selection = true;
    const auto labels = train.codes(train.label());
    const auto ones = std::count(labels.begin(), labels.end(), 1);
    const int prior = 2 * ones > static_cast<std::ptrdiff_t>(labels.size()) ? 1 : 0;
    pred = make_predictions(test, std::vector<int>(test.n_rows(), prior));
  } else {
    auto outcome = fit_predict(cfg.classifier, train, test, r.selected, cfg.classifier_params);
    r.constant_predictor = outcome.constant_predictor;
    pred = std::move(outcome.predictions);
  }
  r.acc = accuracy(pred);
  r.spd = spd(pred);
  r.pe = predictive_equality(pred);
  return r;
}

}  // namespace

std::string to_string(SelectorKind s) {
  switch (s) {
    case SelectorKind::faircfs: return "faircfs";
    case SelectorKind::mb_only: return "mb-only";
    case SelectorKind::all_features: return "all-features";
  }
  return "unknown";
}

SelectorKind parse_selector(const std::string& name) {
  if (name == "faircfs") return SelectorKind::faircfs;
  if (name == "mb-only") return SelectorKind::mb_only;
  if (name == "all-features") return SelectorKind::all_features;
  throw ConfigError("unknown selector '" + name + "'");
}

VarSet select_features(const Dataset& train, SelectorKind selector, const fair::FairCfsConfig& cfg) {
  const int s = train.sensitive();
  const int y = train.label();
  VarSet out;
  switch (selector) {
    case SelectorKind::faircfs:
      out = fair::select_fair_features(train, cfg).selected();
      break;
    case SelectorKind::mb_only:
      out = mb::get_mb(train, y, cfg.algorithm, mb::MbConfig{cfg.ci, cfg.max_k}).blanket;
      break;
    case SelectorKind::all_features:
      for (int j = 0; j < train.n_cols(); ++j) out.push_back(j);
      break;
  }
  return data::set_difference(out, data::make_set({s, y}));
}

std::optional<double> fold_mean(const std::vector<std::optional<double>>& values) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& v : values) {
    if (!v) continue;
    sum += *v;
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

EvalReport cross_validate(const Dataset& d, const EvalConfig& cfg) {
  if (cfg.folds < 2) throw ConfigError("cross-validation needs at least 2 folds");
  if (d.arity(d.label()) != 2) throw DataError("label column '" + d.name(d.label()) + "' must be binary");
  const auto folds = data::stratified_folds(d, cfg.folds, cfg.seed);

  EvalReport report;
  report.selector = cfg.selector;
  report.classifier = cfg.classifier;
  report.per_fold.resize(static_cast<std::size_t>(cfg.folds));

  // Folds are independent; results land in their own slots.
  const int workers = std::clamp(cfg.threads, 1, cfg.folds);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    for (int f = next++; f < cfg.folds; f = next++) {
      try {
        report.per_fold[static_cast<std::size_t>(f)] = run_fold(d, folds, f, cfg);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<std::optional<double>> acc, spd_values, pe_values;
  for (const auto& f : report.per_fold) {
    acc.emplace_back(f.acc);
    spd_values.push_back(f.spd);
    pe_values.push_back(f.pe);
  }
  report.mean_acc = *fold_mean(acc);
  report.mean_spd = fold_mean(spd_values);
  report.mean_pe = fold_mean(pe_values);
  return report;
}

std::string to_csv(const EvalReport& report, const Dataset& d) {
  std::ostringstream out;
  out << "fold,selector,classifier,n_train,n_test,n_selected,acc,spd,pe,flags,selected\n";
  for (const auto& f : report.per_fold) {
    std::string flags;
    if (f.empty_selection) flags = "empty_selection";
    if (f.constant_predictor) flags += flags.empty() ? "constant_predictor" : ";constant_predictor";
    std::string names;
    for (int v : f.selected) names += (names.empty() ? "" : ";") + d.name(v);
    out << f.fold << ',' << to_string(report.selector) << ',' << to_string(report.classifier) << ',' << f.n_train
        << ',' << f.n_test << ',' << f.selected.size() << ',' << format_metric(f.acc) << ','
        << format_metric(f.spd) << ',' << format_metric(f.pe) << ',' << flags << ',' << names << '\n';
  }
  out << "mean," << to_string(report.selector) << ',' << to_string(report.classifier) << ",,,,"
      << format_metric(report.mean_acc) << ',' << format_metric(report.mean_spd) << ','
      << format_metric(report.mean_pe) << ",,\n";
  return out.str();
}

}  // namespace faircfs::eval
