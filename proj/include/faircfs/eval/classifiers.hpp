#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "faircfs/data/dataset.hpp"

namespace faircfs::eval {

using data::Dataset;
using data::VarSet;

// Predicted labels next to the truth and sensitive values of the same rows.
struct Predictions {
  std::vector<int> y_hat;
  std::vector<int> y_true;
  std::vector<int> s;
  std::vector<double> scores;  // P(y = 1), may be empty
};

// Attaches label and sensitive columns of `d` to predicted labels.
Predictions make_predictions(const Dataset& d, std::vector<int> y_hat, std::vector<double> scores = {});

// Categorical naive Bayes with additive smoothing.
class NaiveBayes {
 public:
  static NaiveBayes train(const Dataset& d, const VarSet& features, double laplace = 1.0);
  std::vector<int> predict(const Dataset& d) const;
  std::vector<double> positive_scores(const Dataset& d) const;
  // Training labels held a single class; predictions are that class.
  bool constant() const { return constant_; }

 private:
  VarSet features_;
  std::vector<double> log_prior_;                      // [class]
  std::vector<std::vector<std::vector<double>>> log_;  // [feature][class][value]
  bool constant_ = false;
  int constant_class_ = 0;

  std::vector<double> log_posterior(const Dataset& d, std::size_t row) const;
};

Predictions predict_nb(const NaiveBayes& model, const Dataset& d);

struct LrParams {
  double l2 = 1e-4;
  double learning_rate = 0.1;
  int epochs = 500;
};

// Feature columns expanded to indicator positions, one block per column.
class OneHotEncoder {
 public:
  OneHotEncoder(const Dataset& d, const VarSet& features);
  std::size_t width() const { return width_; }
  // Active indicator of every feature for one row, ascending.
  std::vector<std::size_t> active(const Dataset& d, std::size_t row) const;

 private:
  VarSet features_;
  std::vector<std::size_t> offsets_;
  std::size_t width_ = 0;
};

// Binary logistic regression on one-hot features, trained by full-batch
// gradient descent from zero on mean log-loss plus (l2 / 2) * |w|^2 (the
// intercept is not penalized).
class LogisticRegression {
 public:
  static LogisticRegression train(const Dataset& d, const VarSet& features, const LrParams& params = {});
  std::vector<double> positive_scores(const Dataset& d) const;
  std::vector<int> predict(const Dataset& d) const;
  bool constant() const { return constant_; }
  double bias() const { return bias_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  OneHotEncoder encoder_;
  std::vector<double> weights_;
  double bias_ = 0.0;
  bool constant_ = false;

  explicit LogisticRegression(OneHotEncoder encoder) : encoder_(std::move(encoder)) {}
};

// Objective and gradient over explicit sparse rows; `grad_w` is resized to
// the weight count. Exposed for gradient checks.
double lr_objective(std::span<const std::vector<std::size_t>> rows, std::span<const int> y,
                    std::span<const double> w, double bias, double l2);
void lr_gradient(std::span<const std::vector<std::size_t>> rows, std::span<const int> y, std::span<const double> w,
                 double bias, double l2, std::vector<double>& grad_w, double& grad_bias);

Predictions predict_lr(const LogisticRegression& model, const Dataset& d);

// k-nearest neighbours under Hamming distance over the feature codes.
// Equal distances resolve to the lower training row; tied votes to label 0.
Predictions knn_predict(const Dataset& train, const Dataset& test, const VarSet& features, int k = 5);

enum class ClassifierKind { nb, lr, knn };
std::string to_string(ClassifierKind c);
ClassifierKind parse_classifier(const std::string& name);

struct ClassifierParams {
  double nb_laplace = 1.0;
  LrParams lr{};
  int knn_k = 5;
};

struct FitOutcome {
  Predictions predictions;
  bool constant_predictor = false;  // single-class training labels
};

FitOutcome fit_predict(ClassifierKind kind, const Dataset& train, const Dataset& test, const VarSet& features,
                       const ClassifierParams& params = {});

}  // namespace faircfs::eval
