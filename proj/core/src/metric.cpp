#include "avgjohn/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "avgjohn/errors.hpp"

namespace avgjohn {

namespace {

void check_exponent(double p) {
  if (!(p >= 1.0)) throw ValidationError("norm exponent must lie in [1, inf]");
}

}  // namespace

NormedHost NormedHost::lp(double p, std::size_t dim) {
  check_exponent(p);
  if (dim == 0) throw ValidationError("host dimension must be positive");
  NormedHost h;
  h.p_ = p;
  h.dim_ = dim;
  return h;
}

NormedHost NormedHost::lp_product(double outer_p, std::size_t copies, const NormedHost& inner) {
  check_exponent(outer_p);
  if (copies == 0) throw ValidationError("product needs at least one factor");
  NormedHost h;
  h.p_ = outer_p;
  h.copies_ = copies;
  h.inner_ = std::make_shared<const NormedHost>(inner);
  h.dim_ = copies * inner.dim();
  return h;
}

double lp_norm(const double* v, std::size_t n, double p) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]));
  if (m == 0.0 || std::isinf(p)) return m;
  double acc = 0.0;
  if (p == 1.0) {
    for (std::size_t i = 0; i < n; ++i) acc += std::abs(v[i]);
    return acc;
  }
  if (p == 2.0) {
    for (std::size_t i = 0; i < n; ++i) acc += (v[i] / m) * (v[i] / m);
    return m * std::sqrt(acc);
  }
  for (std::size_t i = 0; i < n; ++i) acc += std::pow(std::abs(v[i]) / m, p);
  return m * std::pow(acc, 1.0 / p);
}

double NormedHost::norm(const double* v) const {
  if (!inner_) return lp_norm(v, dim_, p_);
  Vector blocks(copies_);
  const std::size_t step = inner_->dim();
  for (std::size_t b = 0; b < copies_; ++b) blocks[b] = inner_->norm(v + b * step);
  return lp_norm(blocks.data(), copies_, p_);
}

double NormedHost::norm(const Vector& v) const {
  if (v.size() != dim_) throw ValidationError("vector length does not match host dimension");
  return norm(v.data());
}

bool NormedHost::operator==(const NormedHost& other) const {
  if (p_ != other.p_ || dim_ != other.dim_ || copies_ != other.copies_) return false;
  if (!inner_ || !other.inner_) return !inner_ && !other.inner_;
  return *inner_ == *other.inner_;
}

std::string NormedHost::describe() const {
  std::ostringstream os;
  auto pstr = [](double p) { return std::isinf(p) ? std::string("inf") : std::to_string(p); };
  if (!inner_)
    os << "l_" << pstr(p_) << "^" << dim_;
  else
    os << "l_" << pstr(p_) << "(" << inner_->describe() << ")^" << copies_;
  return os.str();
}

double norm_eval(const NormedHost& host, const Vector& v) { return host.norm(v); }

FiniteMetricSpace::FiniteMetricSpace(Matrix d, std::vector<std::string> labels)
    : d_(std::move(d)), labels_(std::move(labels)) {
  check_basic();
  const double tol = 1e-12 * d_.max_abs();
  if (triangle_defect() > tol) throw ValidationError("distance matrix violates the triangle inequality");
}

FiniteMetricSpace FiniteMetricSpace::trusted(Matrix d, std::vector<std::string> labels) {
  FiniteMetricSpace m;
  m.d_ = std::move(d);
  m.labels_ = std::move(labels);
  m.check_basic();
  return m;
}

void FiniteMetricSpace::check_basic() const {
  if (!d_.square()) throw ValidationError("distance matrix must be square");
  if (!labels_.empty() && labels_.size() != d_.rows())
    throw ValidationError("label count does not match the number of points");
  const std::size_t n = d_.rows();
  const double tol = 1e-12 * d_.max_abs();
  for (std::size_t i = 0; i < n; ++i) {
    if (d_(i, i) != 0.0) throw ValidationError("distance matrix must have a zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = d_(i, j);
      if (!std::isfinite(v)) throw ValidationError("distances must be finite");
      if (v < 0.0) throw ValidationError("distances must be nonnegative");
      if (std::abs(v - d_(j, i)) > tol) throw ValidationError("distance matrix must be symmetric");
    }
  }
}

double FiniteMetricSpace::triangle_defect() const {
  const std::size_t n = d_.rows();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* di = d_.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double dij = di[j];
      const double* dj = d_.row(j);
      for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, di[k] - dij - dj[k]);
    }
  }
  return worst;
}

PointConfig::PointConfig(NormedHost h, std::vector<Vector> pts, std::vector<std::string> lbl)
    : host(std::move(h)), points(std::move(pts)), labels(std::move(lbl)) {
  for (const auto& x : points) {
    if (x.size() != host.dim()) throw ValidationError("point dimension does not match host");
    for (double v : x)
      if (!std::isfinite(v)) throw ValidationError("point coordinates must be finite");
  }
  if (!labels.empty() && labels.size() != points.size())
    throw ValidationError("label count does not match the number of points");
}

ProbabilityWeights::ProbabilityWeights(Vector w) : w_(std::move(w)) {
  if (w_.empty()) throw ValidationError("weights must be nonempty");
  double total = 0.0;
  for (double v : w_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("weights must be finite and nonnegative");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("weights must sum to 1");
}

ProbabilityWeights ProbabilityWeights::uniform(std::size_t n) {
  if (n == 0) throw ValidationError("weights must be nonempty");
  return ProbabilityWeights(Vector(n, 1.0 / static_cast<double>(n)));
}

ProbabilityWeights ProbabilityWeights::normalized(const Vector& mass) {
  double total = 0.0;
  for (double v : mass) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("masses must be finite and nonnegative");
    total += v;
  }
  if (!(total > 0.0)) throw ValidationError("masses must have a positive total");
  Vector w(mass.size());
  for (std::size_t i = 0; i < mass.size(); ++i) w[i] = mass[i] / total;
  ProbabilityWeights out;
  out.w_ = std::move(w);
  return out;
}

std::vector<std::size_t> ProbabilityWeights::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] > 0.0) s.push_back(i);
  return s;
}

Matrix distance_matrix(const PointConfig& config) {
  const std::size_t n = config.size();
  const std::size_t dim = config.host.dim();
  Matrix d(n, n);
  Vector diff(dim);
  for (std::size_t i = 0; i < n; ++i) {
    if (config.points[i].size() != dim) throw ValidationError("point dimension does not match host");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (config.points[j].size() != dim) throw ValidationError("point dimension does not match host");
      for (std::size_t k = 0; k < dim; ++k) diff[k] = config.points[i][k] - config.points[j][k];
      d(i, j) = d(j, i) = config.host.norm(diff.data());
    }
  }
  return d;
}

FiniteMetricSpace config_metric(const PointConfig& config) {
  return FiniteMetricSpace::trusted(distance_matrix(config), config.labels);
}

FiniteMetricSpace snowflake(const FiniteMetricSpace& m, double omega) {
  if (!(omega > 0.0 && omega <= 1.0)) throw ValidationError("snowflake exponent must lie in (0, 1]");
  Matrix d = m.matrix();
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) d(i, j) = std::pow(d(i, j), omega);
  return FiniteMetricSpace::trusted(std::move(d), m.labels());
}

PointConfig frechet_embed(const FiniteMetricSpace& m) {
  const std::size_t n = m.size();
  if (n == 0) throw ValidationError("empty metric space");
  return PointConfig(NormedHost::lp(kInf, n), m.matrix().to_rows(), m.labels());
}

double complexification_norm(const NormedHost& host, const Vector& x, const Vector& y, int nodes) {
  if (nodes < 8) throw ValidationError("complexification quadrature needs at least 8 nodes");
  if (x.size() != host.dim() || y.size() != host.dim())
    throw ValidationError("vector length does not match host dimension");
  const double h = 2.0 * std::numbers::pi / nodes;
  Vector v(host.dim());
  double acc = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double c = std::cos(k * h);
    const double s = std::sin(k * h);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * x[i] - s * y[i];
    const double nv = host.norm(v.data());
    acc += nv * nv;
  }
  return std::sqrt(acc * h / std::numbers::pi);
}

double pair_moment(const Matrix& d, const ProbabilityWeights& w, double s) {
  const std::size_t n = d.rows();
  if (w.size() != n) throw ValidationError("weights length does not match the metric");
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] == 0.0) continue;
    const double* di = d.row(i);
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (w[j] != 0.0 && di[j] != 0.0) row += w[j] * std::pow(di[j], s);
    acc += w[i] * row;
  }
  return acc;
}

}  // namespace avgjohn
