#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rigicert {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when an iterative numerical routine exhausts its iteration cap.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cutoffs used for every rank decision and every residual test.
///
/// `rel_eig` is relative to the largest eigenvalue (or singular value) in
/// magnitude; `abs_residual` is an absolute bound on entries of residual
/// matrices such as Z P or X Z.
struct Tolerance {
  double rel_eig = 1e-8;
  double abs_residual = 1e-8;

  /// Throws std::invalid_argument unless both cutoffs are positive.
  void validate() const;
};

/// Dense real symmetric matrix of order n >= 1.
///
/// The upper triangle of the input is authoritative: the lower triangle is
/// overwritten on construction so that entries are exactly symmetric.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t n);
  explicit SymMatrix(const Matrix& m);

  static SymMatrix zero(std::size_t n) { return SymMatrix(n); }
  static SymMatrix identity(std::size_t n);
  /// v v^T
  static SymMatrix outer(const Vector& v);
  /// (a b^T + b a^T) / 2
  static SymMatrix sym_outer(const Vector& a, const Vector& b);
  /// E_ij = (e_i e_j^T + e_j e_i^T) / 2, so E_ii = e_i e_i^T.
  static SymMatrix unit(std::size_t n, std::size_t i, std::size_t j);
  static SymMatrix diagonal(const Vector& d);

  std::size_t order() const { return static_cast<std::size_t>(m_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  /// Sets both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, double value);

  const Matrix& dense() const { return m_; }

  SymMatrix operator+(const SymMatrix& other) const;
  SymMatrix operator-(const SymMatrix& other) const;
  SymMatrix operator*(double s) const;
  /// Trace inner product <A, B> = sum_ij A_ij B_ij.
  double inner(const SymMatrix& other) const;
  double frobenius_norm() const { return m_.norm(); }
  double max_abs() const;

  bool operator==(const SymMatrix& other) const { return m_ == other.m_; }

 private:
  Matrix m_;
};

struct EigenDecomposition {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // column k belongs to eigenvalues[k]
};

/// Cyclic Jacobi rotations. Stops once the off-diagonal Frobenius norm drops
/// below 1e-14 * ||M||_F; throws NumericalError after kMaxJacobiSweeps.
EigenDecomposition sym_eigen(const SymMatrix& m);
inline constexpr int kMaxJacobiSweeps = 100;

struct RankCorank {
  std::size_t rank = 0;
  std::size_t corank = 0;
};

RankCorank rank_corank(const SymMatrix& m, const Tolerance& tol = {});

/// Orthonormal basis of Ker M as the columns of an n x corank matrix.
Matrix nullspace_basis(const SymMatrix& m, const Tolerance& tol = {});

/// Rank of a family in S^r after isometric vectorization. Empty family -> 0.
std::size_t span_rank(std::span<const SymMatrix> mats, const Tolerance& tol = {});

bool psd_check(const SymMatrix& m, const Tolerance& tol = {});

/// Nearest psd matrix in Frobenius norm (negative eigenvalues clipped to 0).
SymMatrix project_psd(const SymMatrix& m);

// ---------------------------------------------------------------------------
// Vectorization and general dense helpers.

inline std::size_t svec_dim(std::size_t n) { return n * (n + 1) / 2; }

/// Isometric vectorization of S^n: diagonal entries as-is, off-diagonal
/// entries scaled by sqrt(2). Ordering is row-major over the upper triangle.
Vector svec(const SymMatrix& m);
SymMatrix smat(const Vector& v);

/// Numerical rank of an arbitrary dense matrix: singular values above
/// rel_eig * sigma_max.
std::size_t matrix_rank(const Matrix& a, const Tolerance& tol = {});

/// Orthonormal basis (columns) of Ker A for an arbitrary dense matrix, using
/// the same singular-value cutoff as matrix_rank. A with zero rows (or all
/// zero) yields the identity of size a.cols().
Matrix matrix_nullspace(const Matrix& a, const Tolerance& tol = {});

/// Orthonormal basis (columns) of the column space of A.
Matrix column_space(const Matrix& a, const Tolerance& tol = {});

}  // namespace rigicert
