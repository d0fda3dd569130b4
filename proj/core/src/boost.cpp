#include "avgjohn/boost.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "avgjohn/errors.hpp"
#include "avgjohn/mazur.hpp"
#include "avgjohn/nonlinear_gap.hpp"

namespace avgjohn {

namespace {

class CenterProblem {
 public:
  CenterProblem(const ProbabilityWeights& pi, const PointConfig& x, double r)
      : pi_(pi), x_(x), host_(x.host), r_(r), dim_(x.host.dim()) {}

  // G(w) = sum pi_i rho_r(w - x_i).
  Vector value(const Vector& w) const {
    Vector g(dim_, 0.0), v(dim_);
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (pi_[i] == 0.0) continue;
      for (std::size_t c = 0; c < dim_; ++c) v[c] = w[c] - x_.points[i][c];
      const auto rv = radial_power(host_, v, r_);
      for (std::size_t c = 0; c < dim_; ++c) g[c] += pi_[i] * rv[c];
    }
    return g;
  }

  double norm(const Vector& v) const { return host_.norm(v); }

  Matrix jacobian(const Vector& w) const {
    const double p = host_.p();
    if (!host_.is_product() && p > 1.0 && std::isfinite(p)) return analytic_jacobian(w, p);
    // Central differences for the nonsmooth hosts.
    Matrix j(dim_, dim_);
    double size = norm(w);
    for (const auto& xi : x_.points) size = std::max(size, host_.norm(xi));
    const double h = 1e-7 * std::max(size, 1e-12);
    Vector wp = w, wm = w;
    for (std::size_t c = 0; c < dim_; ++c) {
      wp[c] = w[c] + h;
      wm[c] = w[c] - h;
      const auto gp = value(wp);
      const auto gm = value(wm);
      for (std::size_t row = 0; row < dim_; ++row) j(row, c) = (gp[row] - gm[row]) / (2.0 * h);
      wp[c] = wm[c] = w[c];
    }
    return j;
  }

 private:
  Matrix analytic_jacobian(const Vector& w, double p) const {
    Matrix j(dim_, dim_);
    Vector v(dim_), grad(dim_);
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (pi_[i] == 0.0) continue;
      for (std::size_t c = 0; c < dim_; ++c) v[c] = w[c] - x_.points[i][c];
      const double nv = host_.norm(v);
      if (nv == 0.0) {
        if (r_ == 1.0)
          for (std::size_t c = 0; c < dim_; ++c) j(c, c) += pi_[i];
        continue;
      }
      for (std::size_t c = 0; c < dim_; ++c) {
        const double a = std::abs(v[c]) / nv;
        grad[c] = (v[c] > 0 ? 1.0 : (v[c] < 0 ? -1.0 : 0.0)) * (p == 2.0 ? a : std::pow(a, p - 1.0));
      }
      const double iso = std::pow(nv, r_ - 1.0);
      const double rank = (r_ - 1.0) * std::pow(nv, r_ - 2.0);
      for (std::size_t a = 0; a < dim_; ++a) {
        j(a, a) += pi_[i] * iso;
        for (std::size_t b = 0; b < dim_; ++b) j(a, b) += pi_[i] * rank * v[a] * grad[b];
      }
    }
    return j;
  }

  const ProbabilityWeights& pi_;
  const PointConfig& x_;
  const NormedHost& host_;
  double r_;
  std::size_t dim_;
};

// Gaussian elimination with partial pivoting; false when singular.
bool solve_linear(Matrix a, Vector b, Vector& out) {
  const std::size_t n = a.rows();
  double scale = a.max_abs();
  if (scale == 0.0) return false;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) <= 1e-14 * scale) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(piv, c));
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  out.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a(i, c) * out[c];
    out[i] = acc / a(i, i);
  }
  return true;
}

Vector axpy(const Vector& w, double lambda, const Vector& d) {
  Vector out(w.size());
  for (std::size_t c = 0; c < w.size(); ++c) out[c] = w[c] + lambda * d[c];
  return out;
}

// Runs one start; returns the best point found and its residual.
double descend(const CenterProblem& prob, Vector& w, double target, int max_iter, int& iters) {
  Vector g = prob.value(w);
  double res = prob.norm(g);
  for (int it = 0; it < max_iter && res > target; ++it) {
    ++iters;
    bool moved = false;
    Vector step;
    Vector neg(g.size());
    for (std::size_t c = 0; c < g.size(); ++c) neg[c] = -g[c];
    if (solve_linear(prob.jacobian(w), neg, step)) {
      for (double lambda = 1.0; lambda >= 1e-6; lambda *= 0.5) {
        Vector cand = axpy(w, lambda, step);
        Vector gc = prob.value(cand);
        const double rc = prob.norm(gc);
        if (rc < res) {
          w = std::move(cand);
          g = std::move(gc);
          res = rc;
          moved = true;
          break;
        }
      }
    }
    if (!moved) {
      for (double lambda = 0.5; lambda >= 1e-6; lambda *= 0.5) {
        Vector cand = axpy(w, lambda, neg);
        Vector gc = prob.value(cand);
        const double rc = prob.norm(gc);
        if (rc < res) {
          w = std::move(cand);
          g = std::move(gc);
          res = rc;
          moved = true;
          break;
        }
      }
    }
    if (!moved) break;  // step floor reached: caller restarts
  }
  return res;
}

}  // namespace

CenterSolution solve_center(const ProbabilityWeights& pi, const PointConfig& x, double omega,
                            double tol, int max_iter, std::uint64_t seed) {
  if (!(omega > 0.0 && omega <= 1.0)) throw ValidationError("omega must lie in (0, 1]");
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  if (x.size() == 0 || pi.size() != x.size()) throw ValidationError("weights must match the configuration");
  const std::size_t dim = x.host.dim();
  const double r = 1.0 / omega;

  CenterSolution out;
  double radius = 0.0;
  for (const auto& xi : x.points) radius = std::max(radius, x.host.norm(xi));
  out.scale = std::pow(radius, r);
  if (radius == 0.0) {
    out.center.assign(dim, 0.0);
    return out;
  }

  CenterProblem prob(pi, x, r);
  Vector mean(dim, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t c = 0; c < dim; ++c) mean[c] += pi[i] * x.points[i][c];

  std::vector<Vector> starts{radial_power(x.host, mean, omega), mean};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  constexpr int kRandomStarts = 8;
  for (int s = 0; s < kRandomStarts; ++s) {
    Vector w(dim);
    for (double& v : w) v = radius * gauss(rng);
    starts.push_back(std::move(w));
  }

  // Polish below the contract so the x-space residual clears it comfortably.
  const double target = 1e-3 * tol * out.scale;
  double best_res = kInf;
  Vector best_w;
  for (auto& w : starts) {
    ++out.starts;
    const double res = descend(prob, w, target, max_iter, out.iterations);
    if (res < best_res) {
      best_res = res;
      best_w = w;
    }
    if (res <= target) break;
  }

  out.center = radial_power(x.host, best_w, r);
  // Residual evaluated in the original variable.
  const Vector fw = radial_power(x.host, out.center, omega);
  Vector total(dim, 0.0), v(dim);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t c = 0; c < dim; ++c) v[c] = fw[c] - x.points[i][c];
    const auto yi = radial_power(x.host, v, r);
    for (std::size_t c = 0; c < dim; ++c) total[c] += pi[i] * yi[c];
  }
  out.residual = x.host.norm(total);
  if (!(out.residual <= tol * out.scale))
    throw NumericalFailure("center solve did not reach the residual tolerance");
  return out;
}

BoostResult boost_config(const ProbabilityWeights& pi, const PointConfig& x, double p, double q,
                         double tol, std::uint64_t seed) {
  if (!(p >= 1.0) || !(q >= p) || !std::isfinite(q)) throw ValidationError("need 1 <= p <= q < inf");
  const double omega = p / q;
  BoostResult out;
  out.p = p;
  out.q = q;
  out.solution = solve_center(pi, x, omega, tol, 10000, seed);
  const std::size_t n = x.size();
  const std::size_t dim = x.host.dim();
  const Vector fw = radial_power(x.host, out.solution.center, omega);
  std::vector<Vector> ys(n);
  Vector v(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < dim; ++c) v[c] = fw[c] - x.points[i][c];
    ys[i] = radial_power(x.host, v, 1.0 / omega);
  }
  out.y = PointConfig(x.host, std::move(ys), x.labels);

  Vector total(dim, 0.0);
  double biggest = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    biggest = std::max(biggest, x.host.norm(out.y.points[i]));
    for (std::size_t c = 0; c < dim; ++c) total[c] += pi[i] * out.y.points[i][c];
  }
  out.centering = biggest > 0.0 ? x.host.norm(total) / biggest : 0.0;
  out.centered = out.centering <= 1e-6;

  const Matrix dx = distance_matrix(x);
  const Matrix dy = distance_matrix(out.y);
  out.worst_lower_ratio = kInf;
  out.worst_upper_ratio = 0.0;
  const double ratio = q / p;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dx(i, j) == 0.0) continue;
      const double lower = std::pow(2.0, 1.0 - ratio) * std::pow(dx(i, j), ratio);
      const double ni = x.host.norm(out.y.points[i]);
      const double nj = x.host.norm(out.y.points[j]);
      const double mid = std::pow((std::pow(ni, p) + std::pow(nj, p)) / 2.0, 1.0 / p - 1.0 / q);
      const double upper = ratio * dx(i, j) * mid;
      out.worst_lower_ratio = std::min(out.worst_lower_ratio, dy(i, j) / lower);
      if (upper > 0.0) out.worst_upper_ratio = std::max(out.worst_upper_ratio, dy(i, j) / upper);
    }
  if (std::isinf(out.worst_lower_ratio)) out.worst_lower_ratio = 1.0;
  out.sandwich = out.worst_lower_ratio >= 1.0 - 1e-6 && out.worst_upper_ratio <= 1.0 + 1e-6;
  return out;
}

WitnessReport extrapolation_witness_check(const StochasticKernel& k, const PointConfig& x,
                                          double p, double q, double tol, std::uint64_t seed) {
  WitnessReport out;
  out.boost = boost_config(k.pi(), x, p, q, tol, seed);
  out.rq_x = rayleigh_ratio(k, x, q).ratio;
  out.rp_y = rayleigh_ratio(k, out.boost.y, p).ratio;
  out.lhs = std::pow(p / (2.0 * q), p) * std::pow(out.rq_x, p / q);
  out.root_ratio = out.rq_x > 0.0 ? std::pow(out.rp_y, 1.0 / p) / std::pow(out.rq_x, 1.0 / q) : kInf;
  out.pass = out.lhs <= out.rp_y * (1.0 + 1e-6);
  return out;
}

}  // namespace avgjohn
