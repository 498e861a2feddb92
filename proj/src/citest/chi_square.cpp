#include "faircfs/citest/chi_square.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace faircfs::citest {
namespace {

constexpr int kMaxIterations = 200;
constexpr double kTolerance = 1e-12;

// Lower regularized gamma P(a, x) by its power series; valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int i = 0; i < kMaxIterations; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kTolerance) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized gamma Q(a, x) by modified Lentz continued fraction;
// valid for x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kTolerance) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_q: requires a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return std::clamp(1.0 - gamma_p_series(a, x), 0.0, 1.0);
  return std::clamp(gamma_q_continued_fraction(a, x), 0.0, 1.0);
}

double chi_square_sf(double x, int dof) {
  if (dof < 1) throw std::invalid_argument("chi_square_sf: dof must be positive");
  if (x <= 0.0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * x);
}

}  // namespace faircfs::citest
