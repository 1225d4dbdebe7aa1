#include "rigicert/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rigicert {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

// Singular values of `a` plus V, sorted descending (JacobiSVD order).
Eigen::JacobiSVD<Matrix> svd_full_v(const Matrix& a) {
  return Eigen::JacobiSVD<Matrix>(a, Eigen::ComputeFullV | Eigen::ComputeThinU);
}

std::size_t count_above(const Vector& sv, double rel) {
  if (sv.size() == 0) return 0;
  const double smax = sv.cwiseAbs().maxCoeff();
  if (smax == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (std::abs(sv[k]) > rel * smax) ++r;
  return r;
}

}  // namespace

void Tolerance::validate() const {
  if (!(rel_eig > 0.0) || !(abs_residual > 0.0))
    throw std::invalid_argument("tolerance cutoffs must be positive");
}

SymMatrix::SymMatrix(std::size_t n) : m_(Matrix::Zero(idx(n), idx(n))) {
  if (n == 0) throw std::invalid_argument("SymMatrix order must be at least 1");
}

SymMatrix::SymMatrix(const Matrix& m) : m_(m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("SymMatrix requires a square matrix");
  if (m.rows() == 0) throw std::invalid_argument("SymMatrix order must be at least 1");
  for (Eigen::Index i = 0; i < m_.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m_.cols(); ++j) m_(j, i) = m_(i, j);
}

SymMatrix SymMatrix::identity(std::size_t n) {
  return SymMatrix(Matrix(Matrix::Identity(idx(n), idx(n))));
}

SymMatrix SymMatrix::outer(const Vector& v) { return SymMatrix(Matrix(v * v.transpose())); }

SymMatrix SymMatrix::sym_outer(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sym_outer: length mismatch");
  return SymMatrix(Matrix(0.5 * (a * b.transpose() + b * a.transpose())));
}

SymMatrix SymMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw std::out_of_range("SymMatrix::unit index out of range");
  SymMatrix e(n);
  e.set(i, j, i == j ? 1.0 : 0.5);
  return e;
}

SymMatrix SymMatrix::diagonal(const Vector& d) {
  return SymMatrix(Matrix(d.asDiagonal()));
}

void SymMatrix::set(std::size_t i, std::size_t j, double value) {
  m_(idx(i), idx(j)) = value;
  m_(idx(j), idx(i)) = value;
}

SymMatrix SymMatrix::operator+(const SymMatrix& other) const {
  if (order() != other.order()) throw std::invalid_argument("SymMatrix order mismatch");
  return SymMatrix(Matrix(m_ + other.m_));
}

SymMatrix SymMatrix::operator-(const SymMatrix& other) const {
  if (order() != other.order()) throw std::invalid_argument("SymMatrix order mismatch");
  return SymMatrix(Matrix(m_ - other.m_));
}

SymMatrix SymMatrix::operator*(double s) const { return SymMatrix(Matrix(m_ * s)); }

double SymMatrix::inner(const SymMatrix& other) const {
  if (order() != other.order()) throw std::invalid_argument("SymMatrix order mismatch");
  return m_.cwiseProduct(other.m_).sum();
}

double SymMatrix::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

EigenDecomposition sym_eigen(const SymMatrix& m) {
  const Eigen::Index n = m.dense().rows();
  Matrix a = m.dense();
  Matrix v = Matrix::Identity(n, n);

  const double fro = a.norm();
  const double threshold = 1e-14 * fro;
  auto off_norm = [&a, n] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  bool converged = fro == 0.0 || off_norm() <= threshold;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = off_norm() <= threshold;
  }
  if (!converged)
    throw NumericalError("sym_eigen: Jacobi iteration did not converge within " +
                         std::to_string(kMaxJacobiSweeps) + " sweeps");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues[k] = a(src, src);
    out.eigenvectors.col(k) = v.col(src);
  }
  return out;
}

RankCorank rank_corank(const SymMatrix& m, const Tolerance& tol) {
  const auto eig = sym_eigen(m);
  const std::size_t n = m.order();
  const std::size_t r = count_above(eig.eigenvalues, tol.rel_eig);
  return {r, n - r};
}

Matrix nullspace_basis(const SymMatrix& m, const Tolerance& tol) {
  const auto eig = sym_eigen(m);
  const double lmax = eig.eigenvalues.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k)
    if (lmax == 0.0 || std::abs(eig.eigenvalues[k]) <= tol.rel_eig * lmax) cols.push_back(k);
  Matrix basis(m.dense().rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    basis.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors.col(cols[c]);
  return basis;
}

Vector svec(const SymMatrix& m) {
  const std::size_t n = m.order();
  Vector out(static_cast<Eigen::Index>(svec_dim(n)));
  Eigen::Index k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out[k++] = (i == j) ? m(i, j) : std::sqrt(2.0) * m(i, j);
  return out;
}

SymMatrix smat(const Vector& v) {
  // Solve n(n+1)/2 = len.
  const auto len = static_cast<std::size_t>(v.size());
  std::size_t n = 0;
  while (svec_dim(n) < len) ++n;
  if (svec_dim(n) != len || n == 0) throw std::invalid_argument("smat: length is not triangular");
  SymMatrix out(n);
  Eigen::Index k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      out.set(i, j, (i == j) ? v[k] : v[k] / std::sqrt(2.0));
      ++k;
    }
  return out;
}

std::size_t matrix_rank(const Matrix& a, const Tolerance& tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return count_above(svd.singularValues(), tol.rel_eig);
}

Matrix matrix_nullspace(const Matrix& a, const Tolerance& tol) {
  const Eigen::Index k = a.cols();
  if (a.rows() == 0 || k == 0) return Matrix::Identity(k, k);
  const auto svd = svd_full_v(a);
  const std::size_t r = count_above(svd.singularValues(), tol.rel_eig);
  const Eigen::Index rr = static_cast<Eigen::Index>(r);
  return svd.matrixV().rightCols(k - rr);
}

Matrix column_space(const Matrix& a, const Tolerance& tol) {
  if (a.rows() == 0 || a.cols() == 0) return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const std::size_t r = count_above(svd.singularValues(), tol.rel_eig);
  return svd.matrixU().leftCols(static_cast<Eigen::Index>(r));
}

std::size_t span_rank(std::span<const SymMatrix> mats, const Tolerance& tol) {
  if (mats.empty()) return 0;
  const std::size_t r = mats.front().order();
  Matrix stacked(static_cast<Eigen::Index>(svec_dim(r)), static_cast<Eigen::Index>(mats.size()));
  for (std::size_t c = 0; c < mats.size(); ++c) {
    if (mats[c].order() != r) throw std::invalid_argument("span_rank: matrices differ in order");
    stacked.col(static_cast<Eigen::Index>(c)) = svec(mats[c]);
  }
  return matrix_rank(stacked, tol);
}

bool psd_check(const SymMatrix& m, const Tolerance& tol) {
  const auto eig = sym_eigen(m);
  const double lmax = eig.eigenvalues.cwiseAbs().maxCoeff();
  return eig.eigenvalues[0] >= -tol.rel_eig * std::max(1.0, lmax);
}

SymMatrix project_psd(const SymMatrix& m) {
  const auto eig = sym_eigen(m);
  const Vector clipped = eig.eigenvalues.cwiseMax(0.0);
  return SymMatrix(Matrix(eig.eigenvectors * clipped.asDiagonal() * eig.eigenvectors.transpose()));
}

}  // namespace rigicert
