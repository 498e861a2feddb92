#pragma once

#include <optional>

#include "faircfs/eval/classifiers.hpp"

namespace faircfs::eval {

// Fraction of rows with y_hat == y_true. Throws on empty input.
double accuracy(const Predictions& p);

// Largest gap in positive-prediction rate between sensitive groups; nullopt
// when fewer than two groups are present.
std::optional<double> spd(const Predictions& p);

// |FPR(s == 1) - FPR(s != 1)| over rows with y_true == 0; nullopt when either
// group has no negatives.
std::optional<double> predictive_equality(const Predictions& p);

}  // namespace faircfs::eval
