#pragma once

#include <cstdint>
#include <string>

#include "avgjohn/markov.hpp"
#include "avgjohn/metric.hpp"

namespace avgjohn {

struct RayleighReport {
  double numerator = 0.0;    // sum_ij pi_i pi_j d_ij^p
  double denominator = 0.0;  // sum_ij pi_i a_ij d_ij^p
  double ratio = 0.0;        // 0 when the denominator vanishes
  double p = 1.0;
};

// Cross-distance form: d(i, j) is the distance between the i-th point of the
// first family and the j-th point of the second. With one family it is the
// ordinary Rayleigh quotient.
RayleighReport rayleigh_from_distances(const StochasticKernel& k, const Matrix& d, double p);

RayleighReport rayleigh_ratio(const StochasticKernel& k, const FiniteMetricSpace& m, double p);
RayleighReport rayleigh_ratio(const StochasticKernel& k, const PointConfig& x, double p);

// 1 / (1 - lambda2); +inf when lambda2 = 1 up to 1e-12.
double gamma_euclidean_exact(const StochasticKernel& k);

// Two families x, y in one host: sum pi_i pi_j d(x_i, y_j)^p over
// sum pi_i a_ij d(x_i, y_j)^p.
RayleighReport absolute_rayleigh(const StochasticKernel& k, const PointConfig& x,
                                 const PointConfig& y, double p);
// Metric on 2n labels: the first n are x, the last n are y.
RayleighReport absolute_rayleigh(const StochasticKernel& k, const FiniteMetricSpace& paired,
                                 double p);

struct GammaSearchResult {
  RayleighReport best;
  PointConfig witness;
  int starts = 0;
  int accepted_moves = 0;
};

// Lower bound on the nonlinear gap of k for ||.||^p in host by maximizing the
// Rayleigh quotient. Start 0 is the second eigenvector replicated across the
// host coordinates; starts 1..budget-1 are seeded Gaussian configurations.
// Each start is refined by coordinate moves with shrinking steps.
GammaSearchResult gamma_lower_bound_search(const StochasticKernel& k, const NormedHost& host,
                                           double p, int budget, std::uint64_t seed);

// (sum pi_i (A^s)_ij d^p / (s sum pi_i a_ij d^p))^{1/p}; 0 for a zero denominator.
double markov_type_ratio(const StochasticKernel& k, const FiniteMetricSpace& m, double p, int s);

struct ExtrapolationReport {
  bool pass = true;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  std::string branch;
};

// sum pi_i pi_j |s_i - s_j|^beta <= (beta / sqrt(gap))^beta sum pi_i a_ij |s_i - s_j|^beta.
// Vacuous (rhs = inf) when gap = 0.
ExtrapolationReport scalar_extrapolation_check(const StochasticKernel& k, const Vector& s,
                                               double beta);

// (sum pi pi ||x_i - x_j||^q)^{1/q} <= C (sum pi a ||x_i - x_j||^r)^{1/r},
// r = max(p, q), for points in an l_p host, p finite. C per branch:
//   q >= p >= 2        : 2q / sqrt(gap)
//   1 <= p < 2, q >= p : (2q / sqrt(gap))^{2/p}
//   p >= q, p >= 2     : p / sqrt(gap)
//   1 <= q <= p <= 2   : (2 / sqrt(gap))^{2/p}
ExtrapolationReport vector_extrapolation_bound(const StochasticKernel& k, const PointConfig& x,
                                               double q);
double vector_extrapolation_constant(double p, double q, double gap, std::string* branch = nullptr);

}  // namespace avgjohn
