#pragma once

#include <cstddef>

#include "avgjohn/linalg.hpp"
#include "avgjohn/metric.hpp"

namespace avgjohn {

class Graph;

// Row-stochastic matrix reversible with respect to a strictly positive
// stationary vector pi.
class StochasticKernel {
 public:
  StochasticKernel() = default;
  // Validates entries in [0, 1], row sums 1 and pi_i a_ij = pi_j a_ji, all
  // within tol.
  StochasticKernel(Matrix a, ProbabilityWeights pi, double tol = 1e-12);

  // a_ij = w_ij / sum_j w_ij, pi_i proportional to sum_j w_ij, for a
  // symmetric nonnegative conductance matrix with no zero rows.
  static StochasticKernel from_conductances(const Matrix& w);

  std::size_t size() const { return a_.rows(); }
  const Matrix& matrix() const { return a_; }
  double operator()(std::size_t i, std::size_t j) const { return a_(i, j); }
  const ProbabilityWeights& pi() const { return pi_; }

 private:
  Matrix a_;
  ProbabilityWeights pi_;
};

struct Spectrum {
  Vector eigenvalues;  // decreasing
  double lambda2 = 0.0;
  double gap = 0.0;       // 1 - lambda2
  double abs_gap = 0.0;   // 1 - max_{i >= 2} |lambda_i|
};

// Simple random walk on a regular graph with uniform pi.
StochasticKernel graph_kernel(const Graph& g);
// Symmetric matrix D^{1/2} A D^{-1/2} with D = diag(pi).
Matrix symmetrized(const StochasticKernel& k);
Spectrum spectrum(const StochasticKernel& k, EigenMethod method = EigenMethod::kAuto);

// Right eigenvector of A for lambda2, normalized to unit L2(pi) norm.
Vector second_eigenvector(const StochasticKernel& k);

StochasticKernel lazy(const StochasticKernel& k);
// A^s with n <= 4096 guard.
StochasticKernel power(const StochasticKernel& k, int s);

inline constexpr std::size_t kMaxKernelOrder = 4096;

}  // namespace avgjohn
