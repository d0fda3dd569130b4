#include "avgjohn/markov.hpp"

#include <algorithm>
#include <cmath>

#include "avgjohn/errors.hpp"
#include "avgjohn/graph.hpp"

namespace avgjohn {

StochasticKernel::StochasticKernel(Matrix a, ProbabilityWeights pi, double tol)
    : a_(std::move(a)), pi_(std::move(pi)) {
  const std::size_t n = a_.rows();
  if (!a_.square() || n == 0) throw ValidationError("kernel must be a nonempty square matrix");
  if (pi_.size() != n) throw ValidationError("stationary vector length does not match kernel");
  for (std::size_t i = 0; i < n; ++i)
    if (!(pi_[i] > 0.0)) throw ValidationError("stationary vector must be strictly positive");
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = a_(i, j);
      if (!std::isfinite(v) || v < -tol || v > 1.0 + tol)
        throw ValidationError("kernel entries must lie in [0, 1]");
      row += v;
    }
    if (std::abs(row - 1.0) > tol) throw ValidationError("kernel rows must sum to 1");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(pi_[i] * a_(i, j) - pi_[j] * a_(j, i)) > tol)
        throw ValidationError("kernel is not reversible with respect to pi");
}

StochasticKernel StochasticKernel::from_conductances(const Matrix& w) {
  const std::size_t n = w.rows();
  if (!w.square() || n == 0) throw ValidationError("conductances must be a nonempty square matrix");
  Vector deg(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (w(i, j) < 0.0 || w(i, j) != w(j, i))
        throw ValidationError("conductances must be symmetric and nonnegative");
      deg[i] += w(i, j);
    }
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(deg[i] > 0.0)) throw ValidationError("conductance row with zero total");
    for (std::size_t j = 0; j < n; ++j) a(i, j) = w(i, j) / deg[i];
  }
  return StochasticKernel(std::move(a), ProbabilityWeights::normalized(deg));
}

StochasticKernel graph_kernel(const Graph& g) {
  const std::size_t n = g.size();
  if (n == 0) throw ValidationError("graph is empty");
  const std::size_t deg = g.neighbors(0).size();
  if (deg == 0) throw ValidationError("graph has an isolated vertex");
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (g.neighbors(i).size() != deg) throw ValidationError("graph is not regular");
    for (std::size_t j : g.neighbors(i)) a(i, j) += 1.0 / static_cast<double>(deg);
  }
  return StochasticKernel(std::move(a), ProbabilityWeights::uniform(n));
}

Matrix symmetrized(const StochasticKernel& k) {
  const std::size_t n = k.size();
  Vector root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(k.pi()[i]);
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      // Average the two triangles so rounding in pi does not break symmetry.
      const double upper = root[i] / root[j] * k(i, j);
      const double lower = root[j] / root[i] * k(j, i);
      s(i, j) = s(j, i) = 0.5 * (upper + lower);
    }
  return s;
}

Spectrum spectrum(const StochasticKernel& k, EigenMethod method) {
  if (k.size() < 2) throw ValidationError("spectrum needs at least two states");
  auto eig = symmetric_eigen(symmetrized(k), false, method);
  Spectrum out;
  out.eigenvalues = std::move(eig.values);
  out.lambda2 = out.eigenvalues[1];
  out.gap = 1.0 - out.lambda2;
  double m = 0.0;
  for (std::size_t i = 1; i < out.eigenvalues.size(); ++i)
    m = std::max(m, std::abs(out.eigenvalues[i]));
  out.abs_gap = 1.0 - m;
  if (std::abs(out.eigenvalues[0] - 1.0) > 1e-9)
    throw NumericalFailure("top eigenvalue of a stochastic kernel differs from 1");
  return out;
}

Vector second_eigenvector(const StochasticKernel& k) {
  const std::size_t n = k.size();
  if (n < 2) throw ValidationError("spectrum needs at least two states");
  auto eig = symmetric_eigen(symmetrized(k), true);
  Vector f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = eig.vectors(i, 1) / std::sqrt(k.pi()[i]);
  // Fix the sign so the output is reproducible.
  std::size_t lead = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(f[i]) > std::abs(f[lead]) + 1e-12) lead = i;
  if (f[lead] < 0.0)
    for (double& v : f) v = -v;
  return f;
}

StochasticKernel lazy(const StochasticKernel& k) {
  Matrix a = k.matrix();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = 0.5 * a(i, j) + (i == j ? 0.5 : 0.0);
  return StochasticKernel(std::move(a), k.pi());
}

StochasticKernel power(const StochasticKernel& k, int s) {
  if (s < 0) throw ValidationError("kernel power must be nonnegative");
  if (k.size() > kMaxKernelOrder) throw ValidationError("kernel power limited to 4096 states");
  Matrix result = Matrix::identity(k.size());
  Matrix base = k.matrix();
  for (int e = s; e > 0; e >>= 1) {
    if (e & 1) result = multiply(result, base);
    if (e > 1) base = multiply(base, base);
  }
  const double tol = std::max(1, s) * 1e-12;
  return StochasticKernel(std::move(result), k.pi(), tol);
}

}  // namespace avgjohn
