#include "faircfs/eval/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "faircfs/error.hpp"

namespace faircfs::eval {
namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

int majority(std::span<const int> labels) {
  const auto ones = std::count(labels.begin(), labels.end(), 1);
  return 2 * ones > static_cast<std::ptrdiff_t>(labels.size()) ? 1 : 0;
}

void require_binary_label(const Dataset& d) {
  if (d.arity(d.label()) != 2) throw DataError("label column '" + d.name(d.label()) + "' must be binary");
}

// Sparse rows grouped by pattern: identical one-hot rows share one entry.
struct PatternSet {
  std::vector<std::vector<std::size_t>> rows;
  std::vector<double> count;
  std::vector<double> positives;
  double total = 0.0;
};

double objective_core(const PatternSet& ps, std::span<const double> w, double bias, double l2) {
  double loss = 0.0;
  for (std::size_t i = 0; i < ps.rows.size(); ++i) {
    double z = bias;
    for (auto j : ps.rows[i]) z += w[j];
    // log(1 + e^z) - y z, summed over the pattern's rows.
    const double softplus = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    loss += ps.count[i] * softplus - ps.positives[i] * z;
  }
  double penalty = 0.0;
  for (double wj : w) penalty += wj * wj;
  return loss / ps.total + 0.5 * l2 * penalty;
}

void gradient_core(const PatternSet& ps, std::span<const double> w, double bias, double l2,
                   std::vector<double>& grad_w, double& grad_bias) {
  grad_w.assign(w.size(), 0.0);
  grad_bias = 0.0;
  for (std::size_t i = 0; i < ps.rows.size(); ++i) {
    double z = bias;
    for (auto j : ps.rows[i]) z += w[j];
    const double residual = ps.count[i] * sigmoid(z) - ps.positives[i];
    grad_bias += residual;
    for (auto j : ps.rows[i]) grad_w[j] += residual;
  }
  grad_bias /= ps.total;
  for (std::size_t j = 0; j < w.size(); ++j) grad_w[j] = grad_w[j] / ps.total + l2 * w[j];
}

PatternSet explicit_rows(std::span<const std::vector<std::size_t>> rows, std::span<const int> y) {
  if (rows.size() != y.size() || rows.empty()) throw std::invalid_argument("logistic regression: bad training rows");
  PatternSet ps;
  ps.rows.assign(rows.begin(), rows.end());
  ps.count.assign(rows.size(), 1.0);
  for (int label : y) ps.positives.push_back(label == 1 ? 1.0 : 0.0);
  ps.total = static_cast<double>(rows.size());
  return ps;
}

}  // namespace

Predictions make_predictions(const Dataset& d, std::vector<int> y_hat, std::vector<double> scores) {
  Predictions p;
  p.y_hat = std::move(y_hat);
  const auto y = d.codes(d.label());
  const auto s = d.codes(d.sensitive());
  p.y_true.assign(y.begin(), y.end());
  p.s.assign(s.begin(), s.end());
  p.scores = std::move(scores);
  return p;
}

// ---------------------------------------------------------------- naive Bayes

NaiveBayes NaiveBayes::train(const Dataset& d, const VarSet& features, double laplace) {
  require_binary_label(d);
  if (d.n_rows() == 0) throw DataError("naive Bayes: empty training set");
  const int y = d.label();
  const auto labels = d.codes(y);
  const std::size_t n_classes = 2;

  NaiveBayes m;
  m.features_ = features;
  std::vector<double> class_count(n_classes, 0.0);
  for (int c : labels) class_count[static_cast<std::size_t>(c)] += 1.0;
  if (class_count[0] == 0.0 || class_count[1] == 0.0) {
    m.constant_ = true;
    m.constant_class_ = class_count[1] > 0.0 ? 1 : 0;
    return m;
  }
  for (double c : class_count) m.log_prior_.push_back(std::log(c / static_cast<double>(d.n_rows())));

  for (int f : features) {
    const auto arity = static_cast<std::size_t>(d.arity(f));
    std::vector<std::vector<double>> counts(n_classes, std::vector<double>(arity, 0.0));
    const auto codes = d.codes(f);
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
      counts[static_cast<std::size_t>(labels[r])][static_cast<std::size_t>(codes[r])] += 1.0;
    }
    for (std::size_t c = 0; c < n_classes; ++c) {
      const double denom = class_count[c] + laplace * static_cast<double>(arity);
      for (auto& v : counts[c]) v = std::log((v + laplace) / denom);
    }
    m.log_.push_back(std::move(counts));
  }
  return m;
}

std::vector<double> NaiveBayes::log_posterior(const Dataset& d, std::size_t row) const {
  std::vector<double> lp = log_prior_;
  for (std::size_t i = 0; i < features_.size(); ++i) {
    const auto value = static_cast<std::size_t>(d.codes(features_[i])[row]);
    for (std::size_t c = 0; c < lp.size(); ++c) {
      const auto& table = log_[i][c];
      // Codes unseen at training time fall back to the smoothed zero count.
      lp[c] += value < table.size() ? table[value] : *std::min_element(table.begin(), table.end());
    }
  }
  return lp;
}

std::vector<double> NaiveBayes::positive_scores(const Dataset& d) const {
  std::vector<double> out(d.n_rows());
  for (std::size_t r = 0; r < d.n_rows(); ++r) {
    if (constant_) {
      out[r] = constant_class_;
      continue;
    }
    const auto lp = log_posterior(d, r);
    out[r] = sigmoid(lp[1] - lp[0]);
  }
  return out;
}

std::vector<int> NaiveBayes::predict(const Dataset& d) const {
  std::vector<int> out(d.n_rows(), constant_class_);
  if (constant_) return out;
  for (std::size_t r = 0; r < d.n_rows(); ++r) {
    const auto lp = log_posterior(d, r);
    out[r] = lp[1] > lp[0] ? 1 : 0;
  }
  return out;
}

Predictions predict_nb(const NaiveBayes& model, const Dataset& d) {
  return make_predictions(d, model.predict(d), model.positive_scores(d));
}

// ------------------------------------------------------- logistic regression

OneHotEncoder::OneHotEncoder(const Dataset& d, const VarSet& features) : features_(features) {
  for (int f : features) {
    offsets_.push_back(width_);
    width_ += static_cast<std::size_t>(d.arity(f));
  }
}

std::vector<std::size_t> OneHotEncoder::active(const Dataset& d, std::size_t row) const {
  std::vector<std::size_t> out;
  out.reserve(features_.size());
  for (std::size_t i = 0; i < features_.size(); ++i) {
    const auto code = static_cast<std::size_t>(d.codes(features_[i])[row]);
    const std::size_t block = (i + 1 < offsets_.size() ? offsets_[i + 1] : width_) - offsets_[i];
    if (code < block) out.push_back(offsets_[i] + code);
  }
  return out;
}

double lr_objective(std::span<const std::vector<std::size_t>> rows, std::span<const int> y,
                    std::span<const double> w, double bias, double l2) {
  return objective_core(explicit_rows(rows, y), w, bias, l2);
}

void lr_gradient(std::span<const std::vector<std::size_t>> rows, std::span<const int> y, std::span<const double> w,
                 double bias, double l2, std::vector<double>& grad_w, double& grad_bias) {
  gradient_core(explicit_rows(rows, y), w, bias, l2, grad_w, grad_bias);
}

LogisticRegression LogisticRegression::train(const Dataset& d, const VarSet& features, const LrParams& params) {
  require_binary_label(d);
  if (d.n_rows() == 0) throw DataError("logistic regression: empty training set");
  LogisticRegression m{OneHotEncoder(d, features)};
  m.weights_.assign(m.encoder_.width(), 0.0);

  const auto labels = d.codes(d.label());
  const auto ones = std::count(labels.begin(), labels.end(), 1);
  if (ones == 0 || static_cast<std::size_t>(ones) == d.n_rows()) {
    m.constant_ = true;
    m.bias_ = ones == 0 ? -INFINITY : INFINITY;
    return m;
  }

  std::map<std::vector<std::size_t>, std::pair<double, double>> grouped;
  for (std::size_t r = 0; r < d.n_rows(); ++r) {
    auto& [count, pos] = grouped[m.encoder_.active(d, r)];
    count += 1.0;
    pos += labels[r] == 1 ? 1.0 : 0.0;
  }
  PatternSet ps;
  for (auto& [row, cp] : grouped) {
    ps.rows.push_back(row);
    ps.count.push_back(cp.first);
    ps.positives.push_back(cp.second);
  }
  ps.total = static_cast<double>(d.n_rows());

  std::vector<double> grad_w;
  double grad_b = 0.0;
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    gradient_core(ps, m.weights_, m.bias_, params.l2, grad_w, grad_b);
    for (std::size_t j = 0; j < m.weights_.size(); ++j) m.weights_[j] -= params.learning_rate * grad_w[j];
    m.bias_ -= params.learning_rate * grad_b;
  }
  return m;
}

std::vector<double> LogisticRegression::positive_scores(const Dataset& d) const {
  std::vector<double> out(d.n_rows());
  for (std::size_t r = 0; r < d.n_rows(); ++r) {
    double z = bias_;
    for (auto j : encoder_.active(d, r)) z += weights_[j];
    out[r] = sigmoid(z);
  }
  return out;
}

std::vector<int> LogisticRegression::predict(const Dataset& d) const {
  const auto scores = positive_scores(d);
  std::vector<int> out(scores.size());
  for (std::size_t r = 0; r < scores.size(); ++r) out[r] = scores[r] > 0.5 ? 1 : 0;
  return out;
}

Predictions predict_lr(const LogisticRegression& model, const Dataset& d) {
  auto scores = model.positive_scores(d);
  std::vector<int> y_hat(scores.size());
  for (std::size_t r = 0; r < scores.size(); ++r) y_hat[r] = scores[r] > 0.5 ? 1 : 0;
  return make_predictions(d, std::move(y_hat), std::move(scores));
}

// ------------------------------------------------------------------------ kNN

Predictions knn_predict(const Dataset& train, const Dataset& test, const VarSet& features, int k) {
  if (train.n_rows() == 0) throw DataError("kNN: empty training set");
  if (k < 1 || static_cast<std::size_t>(k) > train.n_rows()) {
    throw ConfigError("kNN: k must lie in [1, " + std::to_string(train.n_rows()) + "]");
  }
  const auto row_pattern = [&](const Dataset& d, std::size_t r) {
    std::vector<int> p;
    p.reserve(features.size());
    for (int f : features) p.push_back(d.codes(f)[r]);
    return p;
  };

  // Training rows grouped by feature pattern, row ids ascending.
  std::map<std::vector<int>, std::vector<std::size_t>> groups;
  for (std::size_t r = 0; r < train.n_rows(); ++r) groups[row_pattern(train, r)].push_back(r);
  const auto labels = train.codes(train.label());

  std::map<std::vector<int>, int> memo;
  std::vector<int> y_hat(test.n_rows());
  std::vector<double> scores(test.n_rows());
  std::vector<std::vector<const std::vector<std::size_t>*>> by_distance(features.size() + 1);
  std::vector<std::size_t> pool;
  for (std::size_t r = 0; r < test.n_rows(); ++r) {
    const auto query = row_pattern(test, r);
    auto [it, fresh] = memo.emplace(query, 0);
    if (fresh) {
      for (auto& bucket : by_distance) bucket.clear();
      for (const auto& [pattern, rows] : groups) {
        std::size_t dist = 0;
        for (std::size_t i = 0; i < pattern.size(); ++i) dist += pattern[i] != query[i];
        by_distance[dist].push_back(&rows);
      }
      int votes = 0;
      std::size_t taken = 0;
      const auto want = static_cast<std::size_t>(k);
      for (const auto& bucket : by_distance) {
        if (taken == want) break;
        const std::size_t need = want - taken;
        pool.clear();
        for (const auto* rows : bucket) {
          pool.insert(pool.end(), rows->begin(), rows->begin() + static_cast<std::ptrdiff_t>(std::min(need, rows->size())));
        }
        std::sort(pool.begin(), pool.end());
        for (std::size_t i = 0; i < std::min(need, pool.size()); ++i) {
          votes += labels[pool[i]];
          ++taken;
        }
      }
      it->second = votes;
    }
    y_hat[r] = 2 * it->second > k ? 1 : 0;
    scores[r] = static_cast<double>(it->second) / k;
  }
  return make_predictions(test, std::move(y_hat), std::move(scores));
}

// ----------------------------------------------------------------- dispatch

std::string to_string(ClassifierKind c) {
  switch (c) {
    case ClassifierKind::nb: return "nb";
    case ClassifierKind::lr: return "lr";
    case ClassifierKind::knn: return "knn";
  }
  return "unknown";
}

ClassifierKind parse_classifier(const std::string& name) {
  if (name == "nb") return ClassifierKind::nb;
  if (name == "lr") return ClassifierKind::lr;
  if (name == "knn") return ClassifierKind::knn;
  throw ConfigError("unknown classifier '" + name + "'");
}

FitOutcome fit_predict(ClassifierKind kind, const Dataset& train, const Dataset& test, const VarSet& features,
                       const ClassifierParams& params) {
  require_binary_label(train);
  const auto labels = train.codes(train.label());
  const bool single_class = std::all_of(labels.begin(), labels.end(), [&](int c) { return c == labels.front(); });
  if (single_class) {
    return {make_predictions(test, std::vector<int>(test.n_rows(), majority(labels))), true};
  }
  switch (kind) {
    case ClassifierKind::nb: return {predict_nb(NaiveBayes::train(train, features, params.nb_laplace), test), false};
    case ClassifierKind::lr: return {predict_lr(LogisticRegression::train(train, features, params.lr), test), false};
    case ClassifierKind::knn: return {knn_predict(train, test, features, params.knn_k), false};
  }
  throw ConfigError("unknown classifier");
}

}  // namespace faircfs::eval
