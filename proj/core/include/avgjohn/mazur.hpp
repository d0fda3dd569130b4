#pragma once

#include "avgjohn/metric.hpp"

namespace avgjohn {

// Sharp lower constant of the fractional normalization map for exponent
// p > 0 and omega in (0, 1). Closed forms for p <= 1 and p * omega >= 1;
// otherwise an infimum over sigma in [0, 1) found by a 2^12-node grid and
// golden-section refinement.
double eta(double p, double omega);

// Integrand of the infimum above; sigma = 1 returns the limit value.
double eta_profile(double p, double omega, double sigma);

// x / ||x||^{1 - omega}, with 0 -> 0. omega in (0, 1].
Vector f_omega(const NormedHost& host, const Vector& x, double omega);
// z * ||z||^{1/omega - 1}.
Vector f_omega_inverse(const NormedHost& host, const Vector& z, double omega);
// Radial power map x * ||x||^{r - 1} for r > 0; both maps above are cases.
Vector radial_power(const NormedHost& host, const Vector& x, double r);

// Worst-case ratio profile of ||f(x) - f(y)|| for collinear inputs.
double psi_omega(double rho, double omega);

struct SandwichReport {
  bool pass = true;
  double lower = 0.0;   // eta ||x-y|| / (||x||^{p w} + ||y||^{p w})^{(1-w)/(p w)}
  double value = 0.0;   // ||f(x) - f(y)||
  double upper = 0.0;   // 2^{1-w} ||x-y||^w
  double lower_slack = 0.0;  // value - lower
  double upper_slack = 0.0;  // upper - value
};

// Two-sided Holder estimate for f_omega at a pair, with relative tolerance
// rel_tol on each side.
SandwichReport holder_sandwich_check(const NormedHost& host, const Vector& x, const Vector& y,
                                     double p, double omega, double rel_tol = 1e-12);

}  // namespace avgjohn
