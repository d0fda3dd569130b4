#pragma once

#include <cstdint>
#include <vector>

#include "avgjohn/markov.hpp"
#include "avgjohn/metric.hpp"

namespace avgjohn {

struct CenterSolution {
  Vector center;          // x* with sum pi_i f_omega^{-1}(f_omega(x*) - x_i) = 0
  double residual = 0.0;  // host norm of that sum at x*
  double scale = 0.0;     // max_i ||x_i||^{1/omega}
  int iterations = 0;
  int starts = 0;
};

// Zero of F(z) = sum pi_i f_omega^{-1}(f_omega(z) - x_i). Works in the
// variable w = f_omega(z), where F is a sum of radial power maps of w - x_i;
// damped Newton steps with halving backtracking on ||F||, falling back to
// damped fixed-point steps. Starts: the barycenter, f_{1/omega} of the
// weighted mean, then seeded random points. Throws NumericalFailure if no
// start reaches tol * scale.
CenterSolution solve_center(const ProbabilityWeights& pi, const PointConfig& x, double omega,
                            double tol = 1e-8, int max_iter = 10000, std::uint64_t seed = 0);

struct BoostResult {
  CenterSolution solution;
  PointConfig y;  // y_i = f_omega^{-1}(f_omega(x*) - x_i)
  double p = 1.0;
  double q = 2.0;
  double centering = 0.0;  // ||sum pi_i y_i|| / max ||y_i||
  bool centered = false;
  bool sandwich = false;   // two-sided pairwise bounds for every pair
  double worst_lower_ratio = 0.0;  // min over pairs of ||y_i - y_j|| / lower bound
  double worst_upper_ratio = 0.0;  // max over pairs of ||y_i - y_j|| / upper bound
};

// omega = p / q, 1 <= p <= q.
BoostResult boost_config(const ProbabilityWeights& pi, const PointConfig& x, double p, double q,
                         double tol = 1e-8, std::uint64_t seed = 0);

struct WitnessReport {
  bool pass = false;
  double rq_x = 0.0;   // Rayleigh quotient of x for ||.||^q
  double rp_y = 0.0;   // Rayleigh quotient of y for ||.||^p
  double lhs = 0.0;    // (p / 2q)^p R_q(x)^{p/q}
  double root_ratio = 0.0;  // R_p(y)^{1/p} / R_q(x)^{1/q}, at least p / (2q)
  BoostResult boost;
};

// Boosts x for the stationary law of k and checks
// (p / 2q)^p R_q(x)^{p/q} <= R_p(y).
WitnessReport extrapolation_witness_check(const StochasticKernel& k, const PointConfig& x,
                                          double p, double q, double tol = 1e-8,
                                          std::uint64_t seed = 0);

}  // namespace avgjohn
