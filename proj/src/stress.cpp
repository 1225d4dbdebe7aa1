#include "rigicert/stress.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rigicert {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

void check_order(const SymMatrix& m, std::size_t expected, const char* what) {
  if (m.order() != expected)
    throw std::invalid_argument(std::string(what) + ": matrix has order " + std::to_string(m.order()) +
                                ", framework needs " + std::to_string(expected));
}

// Support, sign, psd, equilibrium and corank checks shared by both kinds.
StressReport verify_common(const Framework& f, StressKind kind, const SymMatrix& m, const Matrix& annihilated,
                           std::size_t expected_corank, const Tolerance& tol) {
  const TensegrityGraph& g = f.graph();
  StressReport rep;
  rep.kind = kind;
  rep.expected_corank = expected_corank;

  double support = 0.0;
  for (const auto& [i, j] : non_edges(g)) support = std::max(support, std::abs(m(i, j)));
  rep.max_support_violation = support;
  rep.support_ok = support <= tol.abs_residual;

  double sign = 0.0;
  for (const auto& e : g.edges()) {
    const int s = required_sign(kind, e.kind);
    if (s != 0) sign = std::max(sign, -s * m(e.i, e.j));
  }
  rep.max_sign_violation = std::max(sign, 0.0);
  rep.sign_ok = rep.max_sign_violation <= tol.abs_residual;

  const auto eig = sym_eigen(m);
  rep.min_eigenvalue = eig.eigenvalues[0];
  rep.psd_ok = psd_check(m, tol);

  rep.max_equilibrium_residual = (m.dense() * annihilated).cwiseAbs().maxCoeff();
  rep.equilibrium_ok = rep.max_equilibrium_residual <= tol.abs_residual;

  rep.corank = rank_corank(m, tol).corank;
  rep.corank_ok = rep.corank == expected_corank;
  return rep;
}

}  // namespace

std::string_view to_string(StressKind kind) {
  return kind == StressKind::Spherical ? "spherical" : "equilibrium";
}

int required_sign(StressKind kind, EdgeKind edge) {
  if (edge == EdgeKind::Bar) return 0;
  const int spherical = edge == EdgeKind::Cable ? +1 : -1;
  return kind == StressKind::Spherical ? spherical : -spherical;
}

std::vector<SymMatrix> spherical_stress_space(const Framework& f, const Tolerance& tol) {
  const std::size_t n = f.node_count();
  const Matrix& p = f.positions();
  const auto pairs = nodes_and_edges(f.graph());

  // Coefficients w.r.t. the Frobenius-orthonormal basis E_ii, (e_i e_j^T + e_j e_i^T)/sqrt(2).
  std::vector<Matrix> unit_basis;
  unit_basis.reserve(pairs.size());
  Matrix a(p.size(), idx(pairs.size()));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    Matrix b = Matrix::Zero(idx(n), idx(n));
    if (i == j) {
      b(idx(i), idx(i)) = 1.0;
    } else {
      b(idx(i), idx(j)) = b(idx(j), idx(i)) = 1.0 / std::sqrt(2.0);
    }
    a.col(idx(k)) = vec(b * p);
    unit_basis.push_back(std::move(b));
  }
  const Matrix null = matrix_nullspace(a, tol);
  std::vector<SymMatrix> out;
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    Matrix z = Matrix::Zero(idx(n), idx(n));
    for (std::size_t k = 0; k < pairs.size(); ++k) z += null(idx(k), c) * unit_basis[k];
    out.emplace_back(z);
  }
  return out;
}

std::vector<SymMatrix> equilibrium_stress_space(const Framework& f, const Tolerance& tol) {
  const std::size_t n = f.node_count();
  const Matrix& p = f.positions();
  const auto& edges = f.graph().edges();
  if (edges.empty()) return {};

  std::vector<Matrix> laplacians;
  laplacians.reserve(edges.size());
  Matrix a(p.size(), idx(edges.size()));
  for (std::size_t k = 0; k < edges.size(); ++k) {
    Vector d = Vector::Zero(idx(n));
    d[idx(edges[k].i)] = 1.0;
    d[idx(edges[k].j)] = -1.0;
    Matrix fij = d * d.transpose();
    a.col(idx(k)) = vec(fij * p);
    laplacians.push_back(std::move(fij));
  }
  const Matrix null = matrix_nullspace(a, tol);
  if (null.cols() == 0) return {};

  // Orthonormalize in the coordinates of V u E only, so that entries off the
  // support stay exactly zero.
  const auto pairs = nodes_and_edges(f.graph());
  const double r2 = std::sqrt(2.0);
  Matrix stacked(idx(pairs.size()), null.cols());
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    Matrix omega = Matrix::Zero(idx(n), idx(n));
    for (std::size_t k = 0; k < edges.size(); ++k) omega += null(idx(k), c) * laplacians[k];
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, j] = pairs[k];
      stacked(idx(k), c) = i == j ? omega(idx(i), idx(i)) : r2 * omega(idx(i), idx(j));
    }
  }
  const Matrix cols = column_space(stacked, tol);
  std::vector<SymMatrix> out;
  for (Eigen::Index c = 0; c < cols.cols(); ++c) {
    SymMatrix omega(n);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, j] = pairs[k];
      omega.set(i, j, i == j ? cols(idx(k), c) : cols(idx(k), c) / r2);
    }
    out.push_back(std::move(omega));
  }
  return out;
}

std::vector<SymMatrix> stress_space(const Framework& f, StressKind kind, const Tolerance& tol) {
  return kind == StressKind::Spherical ? spherical_stress_space(f, tol) : equilibrium_stress_space(f, tol);
}

StressReport verify_spherical_stress(const Framework& f, const SymMatrix& z, const Tolerance& tol) {
  check_order(z, f.node_count(), "verify_spherical_stress");
  return verify_common(f, StressKind::Spherical, z, f.positions(), f.dimension(), tol);
}

StressReport verify_equilibrium_stress(const Framework& f, const SymMatrix& omega, const Tolerance& tol) {
  check_order(omega, f.node_count(), "verify_equilibrium_stress");
  return verify_common(f, StressKind::Equilibrium, omega, configuration(f).augmented, f.dimension() + 1, tol);
}

StressReport verify_stress(const Framework& f, StressKind kind, const SymMatrix& m, const Tolerance& tol) {
  return kind == StressKind::Spherical ? verify_spherical_stress(f, m, tol) : verify_equilibrium_stress(f, m, tol);
}

SymMatrix lift_stress(const Framework& f, const SymMatrix& z, const Tolerance& tol) {
  check_order(z, f.node_count(), "lift_stress");
  const auto rep = verify_spherical_stress(f, z, tol);
  if (!rep.support_ok)
    throw std::invalid_argument("lift_stress: support condition fails (max entry on a non-edge " +
                                std::to_string(rep.max_support_violation) + ")");
  if (!rep.equilibrium_ok)
    throw std::invalid_argument("lift_stress: equilibrium condition Z P = 0 fails (max residual " +
                                std::to_string(rep.max_equilibrium_residual) + ")");

  const Eigen::Index n = idx(f.node_count());
  const Vector w = -(z.dense() * Vector::Ones(n));
  Matrix omega(n + 1, n + 1);
  omega.topLeftCorner(n, n) = z.dense();
  omega.topRightCorner(n, 1) = w;
  omega.bottomLeftCorner(1, n) = w.transpose();
  omega(n, n) = -w.sum();
  return SymMatrix(omega);
}

SymMatrix restrict_stress(const SymMatrix& omega) {
  const Eigen::Index n = idx(omega.order());
  if (n < 2) throw std::invalid_argument("restrict_stress needs order at least 2");
  return SymMatrix(Matrix(omega.dense().topLeftCorner(n - 1, n - 1)));
}

std::optional<SymMatrix> find_psd_stress(const Framework& f, StressKind kind, const FindStressParams& params,
                                         const Tolerance& tol) {
  const std::size_t n = f.node_count();
  const auto basis_list = stress_space(f, kind, tol);
  if (basis_list.empty()) return std::nullopt;

  Matrix basis(idx(svec_dim(n)), idx(basis_list.size()));
  for (std::size_t c = 0; c < basis_list.size(); ++c) basis.col(idx(c)) = svec(basis_list[c]);

  auto project_space = [&basis](const Vector& x) -> Vector { return basis * (basis.transpose() * x); };
  const Vector trace_dir = project_space(svec(SymMatrix::identity(n)));
  const double trace_norm2 = trace_dir.squaredNorm();
  // Every psd element of the space has zero trace, hence is zero.
  if (trace_norm2 <= 1e-24) return std::nullopt;

  auto project_slice = [&](const Vector& x) -> Vector {
    const Vector y = project_space(x);
    return y + ((1.0 - trace_dir.dot(y)) / trace_norm2) * trace_dir;
  };

  struct SignedEntry {
    std::size_t i, j;
    int sign;
  };
  std::vector<SignedEntry> signed_entries;
  for (const auto& e : f.graph().edges()) {
    const int s = required_sign(kind, e.kind);
    if (s != 0) signed_entries.push_back({e.i, e.j, s});
  }
  auto clip_signs = [&signed_entries](SymMatrix m) {
    for (const auto& se : signed_entries)
      if (se.sign * m(se.i, se.j) < 0.0) m.set(se.i, se.j, 0.0);
    return m;
  };

  Vector x = trace_dir / trace_norm2;
  for (int it = 0; it < params.max_iterations; ++it) {
    const SymMatrix y = clip_signs(smat(project_slice(x)));
    const Vector next = svec(project_psd(y));
    const double step = (next - x).norm();
    x = next;
    if (step < params.convergence) break;
  }

  auto accept = [&](const SymMatrix& candidate) -> bool {
    if (candidate.frobenius_norm() < params.min_norm) return false;
    const auto rep = verify_stress(f, kind, candidate, tol);
    return rep.support_ok && rep.sign_ok && rep.psd_ok && rep.equilibrium_ok;
  };

  // Polish: restrict to the face spanned by the dominant eigenvectors of the
  // iterate, then solve the linear constraints exactly inside that face.
  const SymMatrix current = smat(x);
  const auto eig = sym_eigen(current);
  const double lmax = std::max(eig.eigenvalues.maxCoeff(), 0.0);
  const Matrix complement = Matrix::Identity(basis.rows(), basis.rows()) - basis * basis.transpose();
  for (double cut : {1e-3, 1e-5, 1e-7}) {
    if (lmax <= 0.0) break;
    std::vector<Eigen::Index> cols;
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k)
      if (eig.eigenvalues[k] > cut * lmax) cols.push_back(k);
    if (cols.empty()) continue;
    Matrix u(idx(n), idx(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) u.col(idx(c)) = eig.eigenvectors.col(cols[c]);
    const std::size_t k = cols.size();

    // Map svec(T) -> svec(U T U^T), then keep T whose image lies in the space.
    Matrix lift(idx(svec_dim(n)), idx(svec_dim(k)));
    for (Eigen::Index c = 0; c < lift.cols(); ++c) {
      Vector unit = Vector::Zero(lift.cols());
      unit[c] = 1.0;
      lift.col(c) = svec(SymMatrix(Matrix(u * smat(unit).dense() * u.transpose())));
    }
    const Matrix face = matrix_nullspace(complement * lift, tol);
    if (face.cols() == 0) continue;
    const Vector t0 = svec(SymMatrix(Matrix(u.transpose() * current.dense() * u)));
    const Vector t = face * (face.transpose() * t0);
    const Vector y = lift * t;
    const double tr = smat(y).dense().trace();
    if (!(tr > 0.0)) continue;
    const SymMatrix candidate = smat(project_space(y / tr));
    if (accept(candidate)) return candidate;
  }

  const SymMatrix raw = smat(project_slice(x));
  if (accept(raw)) return raw;
  return std::nullopt;
}

}  // namespace rigicert
