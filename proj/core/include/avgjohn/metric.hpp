#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "avgjohn/linalg.hpp"

namespace avgjohn {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Finite-dimensional normed space: l_p^dim, or an l_p-sum of copies of an
// inner host.
class NormedHost {
 public:
  static NormedHost lp(double p, std::size_t dim);
  static NormedHost lp_product(double outer_p, std::size_t copies, const NormedHost& inner);

  double p() const { return p_; }
  std::size_t dim() const { return dim_; }
  bool is_product() const { return inner_ != nullptr; }
  const NormedHost* inner() const { return inner_.get(); }
  std::size_t copies() const { return copies_; }

  double norm(const double* v) const;
  double norm(const Vector& v) const;

  bool operator==(const NormedHost& other) const;
  std::string describe() const;

 private:
  double p_ = 2.0;
  std::size_t dim_ = 0;
  std::size_t copies_ = 0;
  std::shared_ptr<const NormedHost> inner_;
};

// ||v||_p with p = kInf meaning the max norm.
double lp_norm(const double* v, std::size_t n, double p);
double norm_eval(const NormedHost& host, const Vector& v);

class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  // Full validation: square, symmetric, zero diagonal, nonnegative, finite and
  // the triangle inequality up to 1e-12 * max entry.
  explicit FiniteMetricSpace(Matrix d, std::vector<std::string> labels = {});
  // For matrices that are metrics by construction (norm distances, BFS, powers
  // of valid metrics); checks shape, symmetry and the diagonal only.
  static FiniteMetricSpace trusted(Matrix d, std::vector<std::string> labels = {});

  std::size_t size() const { return d_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return d_(i, j); }
  const Matrix& matrix() const { return d_; }
  const std::vector<std::string>& labels() const { return labels_; }
  double diameter() const { return d_.max_abs(); }

  // Largest violation d(i,k) - d(i,j) - d(j,k); zero or negative for a metric.
  double triangle_defect() const;

 private:
  void check_basic() const;
  Matrix d_;
  std::vector<std::string> labels_;
};

struct PointConfig {
  NormedHost host;
  std::vector<Vector> points;
  std::vector<std::string> labels;

  PointConfig() = default;
  PointConfig(NormedHost h, std::vector<Vector> pts, std::vector<std::string> lbl = {});
  std::size_t size() const { return points.size(); }
};

class ProbabilityWeights {
 public:
  ProbabilityWeights() = default;
  // Entries must be nonnegative and sum to 1 within 1e-12.
  explicit ProbabilityWeights(Vector w);
  static ProbabilityWeights uniform(std::size_t n);
  // Normalizes nonnegative masses with a positive total.
  static ProbabilityWeights normalized(const Vector& mass);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const Vector& values() const { return w_; }
  std::vector<std::size_t> support() const;

 private:
  Vector w_;
};

Matrix distance_matrix(const PointConfig& config);
FiniteMetricSpace config_metric(const PointConfig& config);
// d -> d^omega, omega in (0, 1].
FiniteMetricSpace snowflake(const FiniteMetricSpace& m, double omega);
// Isometric Kuratowski-Frechet map x -> (d(x, y))_y into l_inf^n.
PointConfig frechet_embed(const FiniteMetricSpace& m);

// ((1/pi) int_0^{2pi} ||cos(t) x - sin(t) y||^2 dt)^{1/2} by the periodic
// trapezoid rule. nodes >= 8.
double complexification_norm(const NormedHost& host, const Vector& x, const Vector& y,
                             int nodes = 256);

// Sum_ij w_i w_j d_ij^s, the building block of every average used below.
double pair_moment(const Matrix& d, const ProbabilityWeights& w, double s);

}  // namespace avgjohn
