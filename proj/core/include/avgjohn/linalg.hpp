#pragma once

#include <cstddef>
#include <vector>

namespace avgjohn {

using Vector = std::vector<double>;

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<Vector> to_rows() const;
  const std::vector<double>& data() const { return data_; }

  double frobenius() const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

struct SymmetricEigen {
  Vector values;       // sorted decreasing
  Matrix vectors;      // column k is the unit eigenvector of values[k]
  int sweeps = 0;
  double off_diagonal = 0.0;  // Frobenius norm of the remaining off-diagonal part
};

// Cyclic Jacobi rotations. The input must be symmetric; only the upper
// triangle is read. Stops once the off-diagonal Frobenius norm drops to
// rel_tol * ||S||_F (or to abs_tol, whichever is larger).
SymmetricEigen jacobi_eigen(const Matrix& s, bool want_vectors = true,
                            double rel_tol = 1e-12, double abs_tol = 1e-300,
                            int max_sweeps = 100);

// Householder reduction plus implicit QL (Eigen). Same output contract.
SymmetricEigen tridiagonal_eigen(const Matrix& s, bool want_vectors = true);

enum class EigenMethod { kAuto, kJacobi, kTridiagonal };

// Jacobi converges only linearly on the highly degenerate spectra of the
// graph families used here, so kAuto switches solvers above this order.
inline constexpr std::size_t kJacobiMaxOrder = 128;

SymmetricEigen symmetric_eigen(const Matrix& s, bool want_vectors = true,
                               EigenMethod method = EigenMethod::kAuto);

}  // namespace avgjohn
