#include "faircfs/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace faircfs::eval {
namespace {

void check_lengths(const Predictions& p) {
  if (p.y_hat.size() != p.y_true.size() || p.y_hat.size() != p.s.size()) {
    throw std::invalid_argument("predictions: length mismatch");
  }
}

struct Rate {
  double hits = 0.0;
  double total = 0.0;
  double value() const { return hits / total; }
};

}  // namespace

double accuracy(const Predictions& p) {
  check_lengths(p);
  if (p.y_hat.empty()) throw std::invalid_argument("accuracy: no predictions");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < p.y_hat.size(); ++i) correct += p.y_hat[i] == p.y_true[i];
  return static_cast<double>(correct) / static_cast<double>(p.y_hat.size());
}

std::optional<double> spd(const Predictions& p) {
  check_lengths(p);
  std::map<int, Rate> groups;
  for (std::size_t i = 0; i < p.y_hat.size(); ++i) {
    auto& g = groups[p.s[i]];
    g.hits += p.y_hat[i] == 1;
    g.total += 1.0;
  }
  if (groups.size() < 2) return std::nullopt;
  double lo = 1.0, hi = 0.0;
  for (const auto& [s, g] : groups) {
    lo = std::min(lo, g.value());
    hi = std::max(hi, g.value());
  }
  return hi - lo;
}

std::optional<double> predictive_equality(const Predictions& p) {
  check_lengths(p);
  Rate protected_group, rest;
  for (std::size_t i = 0; i < p.y_hat.size(); ++i) {
    if (p.y_true[i] != 0) continue;
    auto& g = p.s[i] == 1 ? protected_group : rest;
    g.hits += p.y_hat[i] == 1;
    g.total += 1.0;
  }
  if (protected_group.total == 0.0 || rest.total == 0.0) return std::nullopt;
  return std::abs(protected_group.value() - rest.value());
}

}  // namespace faircfs::eval
