#include "avgjohn/nonlinear_gap.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "avgjohn/errors.hpp"

namespace avgjohn {

namespace {

void check_p(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("exponent must be positive and finite");
}

double powd(double d, double p) { return d == 0.0 ? 0.0 : (p == 1.0 ? d : (p == 2.0 ? d * d : std::pow(d, p))); }

}  // namespace

RayleighReport rayleigh_from_distances(const StochasticKernel& k, const Matrix& d, double p) {
  check_p(p);
  const std::size_t n = k.size();
  if (d.rows() != n || d.cols() != n) throw ValidationError("distance matrix size does not match kernel");
  RayleighReport r;
  r.p = p;
  const auto& pi = k.pi();
  for (std::size_t i = 0; i < n; ++i) {
    const double* di = d.row(i);
    const double* ai = k.matrix().row(i);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double dp = powd(di[j], p);
      num += pi[j] * dp;
      den += ai[j] * dp;
    }
    r.numerator += pi[i] * num;
    r.denominator += pi[i] * den;
  }
  r.ratio = r.denominator > 0.0 ? r.numerator / r.denominator : 0.0;
  return r;
}

RayleighReport rayleigh_ratio(const StochasticKernel& k, const FiniteMetricSpace& m, double p) {
  return rayleigh_from_distances(k, m.matrix(), p);
}

RayleighReport rayleigh_ratio(const StochasticKernel& k, const PointConfig& x, double p) {
  return rayleigh_from_distances(k, distance_matrix(x), p);
}

double gamma_euclidean_exact(const StochasticKernel& k) {
  const auto s = spectrum(k);
  if (s.gap <= 1e-12) return kInf;
  return 1.0 / s.gap;
}

RayleighReport absolute_rayleigh(const StochasticKernel& k, const PointConfig& x,
                                 const PointConfig& y, double p) {
  if (!(x.host == y.host)) throw ValidationError("both families must live in the same host");
  const std::size_t n = k.size();
  if (x.size() != n || y.size() != n) throw ValidationError("family size does not match kernel");
  Matrix d(n, n);
  Vector diff(x.host.dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = x.points[i][c] - y.points[j][c];
      d(i, j) = x.host.norm(diff.data());
    }
  return rayleigh_from_distances(k, d, p);
}

RayleighReport absolute_rayleigh(const StochasticKernel& k, const FiniteMetricSpace& paired,
                                 double p) {
  const std::size_t n = k.size();
  if (paired.size() != 2 * n) throw ValidationError("paired metric must have 2n points");
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = paired(i, n + j);
  return rayleigh_from_distances(k, d, p);
}

namespace {

// Incremental Rayleigh quotient under single-point moves.
class RayleighState {
 public:
  RayleighState(const StochasticKernel& k, const NormedHost& host, std::vector<Vector> pts, double p)
      : k_(k), host_(host), pts_(std::move(pts)), p_(p), n_(k.size()), dp_(n_, n_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) dp_(i, j) = dp_(j, i) = powd(dist(pts_[i], pts_[j]), p_);
    recompute();
  }

  double ratio() const { return den_ > 0.0 ? num_ / den_ : 0.0; }
  const std::vector<Vector>& points() const { return pts_; }

  // Ratio after replacing point i by cand; fills row for commit().
  double trial(std::size_t i, const Vector& cand) {
    row_.resize(n_);
    double num = num_, den = den_;
    const auto& pi = k_.pi();
    for (std::size_t j = 0; j < n_; ++j) {
      if (j == i) {
        row_[j] = 0.0;
        continue;
      }
      const double nv = powd(dist(cand, pts_[j]), p_);
      row_[j] = nv;
      const double delta = nv - dp_(i, j);
      num += 2.0 * pi[i] * pi[j] * delta;
      den += (pi[i] * k_(i, j) + pi[j] * k_(j, i)) * delta;
    }
    trial_num_ = num;
    trial_den_ = den;
    return den > 0.0 ? num / den : 0.0;
  }

  void commit(std::size_t i, const Vector& cand) {
    pts_[i] = cand;
    for (std::size_t j = 0; j < n_; ++j) dp_(i, j) = dp_(j, i) = row_[j];
    num_ = trial_num_;
    den_ = trial_den_;
  }

  void recompute() {
    num_ = den_ = 0.0;
    const auto& pi = k_.pi();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        num_ += pi[i] * pi[j] * dp_(i, j);
        den_ += pi[i] * k_(i, j) * dp_(i, j);
      }
  }

 private:
  double dist(const Vector& a, const Vector& b) {
    diff_.resize(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) diff_[c] = a[c] - b[c];
    return host_.norm(diff_.data());
  }

  const StochasticKernel& k_;
  const NormedHost& host_;
  std::vector<Vector> pts_;
  double p_;
  std::size_t n_;
  Matrix dp_;
  double num_ = 0.0, den_ = 0.0, trial_num_ = 0.0, trial_den_ = 0.0;
  Vector row_, diff_;
};

double refine(RayleighState& st, int sweeps, int& accepted) {
  const auto& pts = st.points();
  double spread = 0.0;
  for (const auto& x : pts)
    for (double v : x) spread = std::max(spread, std::abs(v));
  double step = spread > 0.0 ? 0.25 * spread : 1.0;
  double best = st.ratio();
  for (int sweep = 0; sweep < sweeps && step > 1e-9 * std::max(spread, 1e-300); ++sweep) {
    bool improved = false;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t c = 0; c < pts[i].size(); ++c)
        for (double sgn : {1.0, -1.0}) {
          Vector cand = pts[i];
          cand[c] += sgn * step;
          const double r = st.trial(i, cand);
          if (r > best * (1.0 + 1e-15)) {
            st.commit(i, cand);
            best = r;
            improved = true;
            ++accepted;
          }
        }
    if (!improved) step *= 0.5;
  }
  st.recompute();
  return st.ratio();
}

}  // namespace

GammaSearchResult gamma_lower_bound_search(const StochasticKernel& k, const NormedHost& host,
                                           double p, int budget, std::uint64_t seed) {
  check_p(p);
  if (budget < 1) throw ValidationError("search budget must be at least 1");
  const std::size_t n = k.size();
  if (n < 2) throw ValidationError("search needs at least two states");
  const std::size_t dim = host.dim();
  constexpr int kSweeps = 60;

  GammaSearchResult out;
  out.best.p = p;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  bool have = false;
  for (int start = 0; start < budget; ++start) {
    std::vector<Vector> pts(n, Vector(dim, 0.0));
    if (start == 0) {
      const Vector f = second_eigenvector(k);
      for (std::size_t i = 0; i < n; ++i) std::fill(pts[i].begin(), pts[i].end(), f[i]);
    } else {
      for (auto& x : pts)
        for (double& v : x) v = gauss(rng);
    }
    RayleighState st(k, host, std::move(pts), p);
    refine(st, kSweeps, out.accepted_moves);
    ++out.starts;
    const double r = st.ratio();
    if (!have || r > out.best.ratio) {
      have = true;
      PointConfig cfg(host, st.points());
      out.best = rayleigh_ratio(k, cfg, p);
      out.witness = std::move(cfg);
    }
  }
  return out;
}

double markov_type_ratio(const StochasticKernel& k, const FiniteMetricSpace& m, double p, int s) {
  check_p(p);
  if (s < 1) throw ValidationError("time horizon must be at least 1");
  const auto ks = power(k, s);
  const auto far = rayleigh_from_distances(ks, m.matrix(), p);
  const auto near = rayleigh_from_distances(k, m.matrix(), p);
  if (near.denominator <= 0.0) return 0.0;
  return std::pow(far.denominator / (s * near.denominator), 1.0 / p);
}

ExtrapolationReport scalar_extrapolation_check(const StochasticKernel& k, const Vector& s,
                                               double beta) {
  if (!(beta >= 2.0) || !std::isfinite(beta)) throw ValidationError("beta must be finite and >= 2");
  const std::size_t n = k.size();
  if (s.size() != n) throw ValidationError("value vector length does not match kernel");
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = std::abs(s[i] - s[j]);
  const auto rep = rayleigh_from_distances(k, d, beta);
  const double gap = spectrum(k).gap;
  ExtrapolationReport r;
  r.branch = "scalar";
  r.lhs = rep.numerator;
  if (gap <= 1e-12) {
    r.constant = kInf;
    r.rhs = kInf;
    r.pass = true;
    return r;
  }
  r.constant = std::pow(beta / std::sqrt(gap), beta);
  r.rhs = r.constant * rep.denominator;
  r.pass = r.lhs <= r.rhs * (1.0 + 1e-12) + 1e-300;
  return r;
}

double vector_extrapolation_constant(double p, double q, double gap, std::string* branch) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("host exponent must be finite and >= 1");
  if (!(q >= 1.0) || !std::isfinite(q)) throw ValidationError("q must be finite and >= 1");
  if (gap <= 1e-12) {
    if (branch) *branch = "disconnected";
    return kInf;
  }
  const double root = std::sqrt(gap);
  auto set = [&](const char* name) {
    if (branch) *branch = name;
  };
  if (q >= p && p >= 2.0) {
    set("q>=p>=2");
    return 2.0 * q / root;
  }
  if (q >= p) {
    set("1<=p<2,q>=p");
    return std::pow(2.0 * q / root, 2.0 / p);
  }
  if (p >= 2.0) {
    set("p>=q,p>=2");
    return p / root;
  }
  set("1<=q<=p<=2");
  return std::pow(2.0 / root, 2.0 / p);
}

ExtrapolationReport vector_extrapolation_bound(const StochasticKernel& k, const PointConfig& x,
                                               double q) {
  if (x.host.is_product()) throw ValidationError("vector extrapolation needs an l_p host");
  const double p = x.host.p();
  if (x.size() != k.size()) throw ValidationError("configuration size does not match kernel");
  const double gap = spectrum(k).gap;
  ExtrapolationReport r;
  r.constant = vector_extrapolation_constant(p, q, gap, &r.branch);
  const Matrix d = distance_matrix(x);
  const double top = std::max(p, q);
  r.lhs = std::pow(rayleigh_from_distances(k, d, q).numerator, 1.0 / q);
  const double edge = std::pow(rayleigh_from_distances(k, d, top).denominator, 1.0 / top);
  r.rhs = std::isinf(r.constant) ? kInf : r.constant * edge;
  r.pass = r.lhs <= r.rhs * (1.0 + 1e-12) + 1e-300;
  return r;
}

}  // namespace avgjohn
