#include "avgjohn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "avgjohn/errors.hpp"

namespace avgjohn {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw ValidationError("ragged matrix rows");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i));
  }
  return m;
}

std::vector<Vector> Matrix::to_rows() const {
  std::vector<Vector> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i), row(i) + cols_);
  return out;
}

double Matrix::frobenius() const {
  double scale = max_abs();
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : data_) acc += (v / scale) * (v / scale);
  return scale * std::sqrt(acc);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("matrix product dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = ai[k];
      if (aik == 0.0) continue;
      const double* bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  const std::size_t n = a.rows();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* r = a.row(i);
    for (std::size_t j = i + 1; j < n; ++j) acc += r[j] * r[j];
  }
  return std::sqrt(2.0 * acc);
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& s, bool want_vectors, double rel_tol,
                            double abs_tol, int max_sweeps) {
  if (!s.square()) throw ValidationError("eigen solve needs a square matrix");
  const std::size_t n = s.rows();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = s(i, j);

  // Rows of vt are eigenvectors; keeps the rotation updates contiguous.
  Matrix vt = want_vectors ? Matrix::identity(n) : Matrix();
  const double target = std::max(rel_tol * a.frobenius(), abs_tol);

  SymmetricEigen out;
  double off = off_diagonal_norm(a);
  int sweep = 0;
  while (off > target && sweep < max_sweeps) {
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Skip rotations that cannot change the diagonal in floating point.
        if (sweep > 4 && std::abs(apq) * 1e18 < std::abs(app) &&
            std::abs(apq) * 1e18 < std::abs(aqq)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        const double tau = sn / (1.0 + c);

        double* rp = a.row(p);
        double* rq = a.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          const double g = rp[k];
          const double h = rq[k];
          rp[k] = g - sn * (h + tau * g);
          rq[k] = h + sn * (g - tau * h);
        }
        rp[p] = app - t * apq;
        rq[q] = aqq + t * apq;
        rp[q] = rq[p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          a(k, p) = rp[k];
          a(k, q) = rq[k];
        }
        if (want_vectors) {
          double* vp = vt.row(p);
          double* vq = vt.row(q);
          for (std::size_t k = 0; k < n; ++k) {
            const double g = vp[k];
            const double h = vq[k];
            vp[k] = g - sn * (h + tau * g);
            vq[k] = h + sn * (g - tau * h);
          }
        }
      }
    }
    off = off_diagonal_norm(a);
  }
  if (off > target)
    throw NumericalFailure("Jacobi eigensolver did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  out.values.resize(n);
  if (want_vectors) out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    if (want_vectors)
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = vt(order[k], i);
  }
  out.sweeps = sweep;
  out.off_diagonal = off;
  return out;
}

SymmetricEigen tridiagonal_eigen(const Matrix& s, bool want_vectors) {
  if (!s.square()) throw ValidationError("eigen solve needs a square matrix");
  const auto n = static_cast<Eigen::Index>(s.rows());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) m(i, j) = m(j, i) = s(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      m, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("tridiagonal eigensolver did not converge");
  SymmetricEigen out;
  out.values.resize(s.rows());
  if (want_vectors) out.vectors = Matrix(s.rows(), s.rows());
  // Eigen sorts increasing.
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = n - 1 - k;
    out.values[k] = solver.eigenvalues()(src);
    if (want_vectors)
      for (Eigen::Index i = 0; i < n; ++i) out.vectors(i, k) = solver.eigenvectors()(i, src);
  }
  return out;
}

SymmetricEigen symmetric_eigen(const Matrix& s, bool want_vectors, EigenMethod method) {
  if (method == EigenMethod::kJacobi ||
      (method == EigenMethod::kAuto && s.rows() <= kJacobiMaxOrder))
    return jacobi_eigen(s, want_vectors);
  return tridiagonal_eigen(s, want_vectors);
}

}  // namespace avgjohn
