#pragma once

namespace faircfs::citest {

// Regularized upper incomplete gamma Q(a, x) for a > 0, x >= 0.
double gamma_q(double a, double x);

// Upper tail probability of the chi-square distribution, Q(dof/2, x/2).
double chi_square_sf(double x, int dof);

}  // namespace faircfs::citest
