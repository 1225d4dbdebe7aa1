#include "rigicert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace rigicert {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

void check_order(const SymMatrix& m, std::size_t expected, const char* what) {
  if (m.order() != expected)
    throw std::invalid_argument(std::string(what) + ": stress has order " + std::to_string(m.order()) +
                                ", expected " + std::to_string(expected));
}

void finish(Certificate& c) {
  c.overall = std::all_of(c.conditions.begin(), c.conditions.end(),
                          [](const Condition& k) { return !k.required || k.pass; });
}

void add_stress_conditions(Certificate& c, const StressReport& r) {
  c.conditions.push_back({"support", r.support_ok, true,
                          fmt("max |entry| on a non-edge %.3g", r.max_support_violation),
                          {{"max_violation", r.max_support_violation}}});
  c.conditions.push_back({"sign", r.sign_ok, true, fmt("max sign violation on cables/struts %.3g", r.max_sign_violation),
                          {{"max_violation", r.max_sign_violation}}});
  c.conditions.push_back(
      {"psd", r.psd_ok, true, fmt("min eigenvalue %.6g", r.min_eigenvalue), {{"min_eigenvalue", r.min_eigenvalue}}});
  c.conditions.push_back({"corank", r.corank_ok, true,
                          fmt("corank %.0f, required %.0f", static_cast<double>(r.corank),
                              static_cast<double>(r.expected_corank)),
                          {{"corank", static_cast<double>(r.corank)},
                           {"expected", static_cast<double>(r.expected_corank)}}});
  c.conditions.push_back({"equilibrium", r.equilibrium_ok, true,
                          fmt("max equilibrium residual %.3g", r.max_equilibrium_residual),
                          {{"max_residual", r.max_equilibrium_residual}}});
}

Condition span_condition(const char* name, const SpanRankCheck& s) {
  return {name, s.pass, true,
          fmt("span rank %.0f of %.0f", static_cast<double>(s.span_rank), static_cast<double>(s.full_rank)),
          {{"span_rank", static_cast<double>(s.span_rank)}, {"full_rank", static_cast<double>(s.full_rank)}}};
}

SpanRankCheck span_check(std::span<const SymMatrix> mats, std::size_t d, const Tolerance& tol) {
  SpanRankCheck out;
  out.full_rank = svec_dim(d);
  out.span_rank = span_rank(mats, tol);
  out.pass = out.span_rank == out.full_rank;
  if (!out.pass) {
    Matrix rows(idx(mats.size()), idx(out.full_rank));
    for (std::size_t k = 0; k < mats.size(); ++k) rows.row(idx(k)) = svec(mats[k]).transpose();
    const Matrix null = matrix_nullspace(rows, tol);
    if (null.cols() > 0) out.witness = smat(null.col(0));
  }
  return out;
}

// Columns q_k sqrt(lambda_k) for the eigenvalues counted by rank_corank.
Matrix psd_factor(const SymMatrix& x, const Tolerance& tol) {
  const auto eig = sym_eigen(x);
  const std::size_t r = rank_corank(x, tol).rank;
  const Eigen::Index n = idx(x.order());
  Matrix p(n, idx(r));
  for (std::size_t k = 0; k < r; ++k) {
    const Eigen::Index c = n - 1 - idx(k);
    p.col(idx(k)) = eig.eigenvectors.col(c) * std::sqrt(std::max(eig.eigenvalues[c], 0.0));
  }
  return p;
}

std::vector<SymMatrix> projected(const Matrix& p, std::span<const SymMatrix> mats) {
  std::vector<SymMatrix> out;
  out.reserve(mats.size());
  for (const auto& a : mats) out.emplace_back(Matrix(p.transpose() * a.dense() * p));
  return out;
}

Matrix stack(std::span<const SymMatrix> mats, std::size_t n) {
  Matrix m(idx(svec_dim(n)), idx(mats.size()));
  for (std::size_t k = 0; k < mats.size(); ++k) m.col(idx(k)) = svec(mats[k]);
  return m;
}

std::vector<SymMatrix> pick(std::span<const SymMatrix> mats, const std::vector<std::size_t>& which) {
  std::vector<SymMatrix> out;
  for (std::size_t k : which) {
    if (k >= mats.size()) throw std::out_of_range("constraint index " + std::to_string(k) + " out of range");
    out.push_back(mats[k]);
  }
  return out;
}

}  // namespace

std::string_view to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::UniversalCompletability:
      return "universal_completability";
    case CertificateKind::UniversalRigidity:
      return "universal_rigidity";
    case CertificateKind::GenericUniversalRigidity:
      return "generic_universal_rigidity";
  }
  return "universal_completability";
}

const Condition* Certificate::find(std::string_view name) const {
  for (const auto& c : conditions)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<std::string> Certificate::failing() const {
  std::vector<std::string> out;
  for (const auto& c : conditions)
    if (c.required && !c.pass) out.push_back(c.name);
  return out;
}

ActivePairs spherical_active_pairs(const Framework& f, const SymMatrix& z, const Tolerance& tol) {
  ActivePairs out;
  for (std::size_t v = 0; v < f.node_count(); ++v) out.emplace_back(v, v);
  for (const auto& e : f.graph().edges())
    if (e.kind == EdgeKind::Bar || std::abs(z(e.i, e.j)) > tol.abs_residual) out.emplace_back(e.i, e.j);
  return out;
}

ActivePairs equilibrium_active_pairs(const Framework& f, const SymMatrix& omega, const Tolerance& tol) {
  ActivePairs out;
  for (const auto& e : f.graph().edges())
    if (e.kind == EdgeKind::Bar || std::abs(omega(e.i, e.j)) > tol.abs_residual) out.emplace_back(e.i, e.j);
  return out;
}

SpanRankCheck gram_nondegeneracy_check(const Framework& f, const ActivePairs& pairs, const Tolerance& tol) {
  std::vector<SymMatrix> mats;
  mats.reserve(pairs.size());
  for (const auto& [i, j] : pairs) mats.push_back(spherical_constraint_matrix(f, i, j));
  return span_check(mats, f.dimension(), tol);
}

SpanRankCheck conic_at_infinity_check(const Framework& f, const ActivePairs& pairs, const Tolerance& tol) {
  std::vector<SymMatrix> mats;
  mats.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    if (i == j) throw std::invalid_argument("conic_at_infinity_check: diagonal pair {" + std::to_string(i) + "," +
                                            std::to_string(j) + "}");
    mats.push_back(euclidean_constraint_matrix(f, i, j));
  }
  return span_check(mats, f.dimension(), tol);
}

Certificate certify_universal_completability(const Framework& f, const SymMatrix& z, const Tolerance& tol) {
  check_order(z, f.node_count(), "certify_universal_completability");
  Certificate c;
  c.kind = CertificateKind::UniversalCompletability;

  const auto span = span_checks(f, tol);
  c.conditions.push_back({"linear_span", span.linear_span_full, true,
                          fmt("rank P = %.0f, d = %.0f", static_cast<double>(span.linear_rank),
                              static_cast<double>(f.dimension())),
                          {{"rank", static_cast<double>(span.linear_rank)}}});
  add_stress_conditions(c, verify_spherical_stress(f, z, tol));
  c.conditions.push_back(
      span_condition("gram_nondegeneracy", gram_nondegeneracy_check(f, spherical_active_pairs(f, z, tol), tol)));
  finish(c);
  return c;
}

Certificate certify_universal_rigidity(const Framework& f, const SymMatrix& omega, const Tolerance& tol) {
  check_order(omega, f.node_count(), "certify_universal_rigidity");
  Certificate c;
  c.kind = CertificateKind::UniversalRigidity;

  const auto span = span_checks(f, tol);
  c.conditions.push_back({"affine_span", span.affine_span_full, true,
                          fmt("rank P_a = %.0f, d + 1 = %.0f", static_cast<double>(span.affine_rank),
                              static_cast<double>(f.dimension() + 1)),
                          {{"rank", static_cast<double>(span.affine_rank)}}});
  add_stress_conditions(c, verify_equilibrium_stress(f, omega, tol));
  c.conditions.push_back(span_condition("conic_at_infinity",
                                        conic_at_infinity_check(f, equilibrium_active_pairs(f, omega, tol), tol)));
  finish(c);
  return c;
}

Certificate certify_generic_universal_rigidity(const Framework& f, const SymMatrix& omega, const Tolerance& tol) {
  check_order(omega, f.node_count(), "certify_generic_universal_rigidity");
  Certificate c;
  c.kind = CertificateKind::GenericUniversalRigidity;

  c.conditions.push_back({"declared_generic", f.generic(), true,
                          f.generic() ? "framework declared generic" : "framework not declared generic",
                          {}});
  const auto span = span_checks(f, tol);
  c.conditions.push_back({"affine_span", span.affine_span_full, false,
                          fmt("rank P_a = %.0f, d + 1 = %.0f", static_cast<double>(span.affine_rank),
                              static_cast<double>(f.dimension() + 1)),
                          {{"rank", static_cast<double>(span.affine_rank)}}});
  add_stress_conditions(c, verify_equilibrium_stress(f, omega, tol));

  std::vector<Edge> support;
  for (const auto& e : f.graph().edges())
    if (std::abs(omega(e.i, e.j)) > tol.abs_residual) support.push_back(e);
  const std::size_t deg = min_degree(TensegrityGraph(f.node_count(), support));
  c.conditions.push_back({"min_degree", deg >= f.dimension(), true,
                          fmt("support graph of the stress has minimum degree %.0f, d = %.0f",
                              static_cast<double>(deg), static_cast<double>(f.dimension())),
                          {{"min_degree", static_cast<double>(deg)}}});
  c.conditions.push_back(span_condition("conic_at_infinity",
                                        conic_at_infinity_check(f, equilibrium_active_pairs(f, omega, tol), tol)));
  finish(c);
  return c;
}

SapResult sap_check(const TensegrityGraph& g, const SymMatrix& m, const Tolerance& tol) {
  const std::size_t n = g.node_count();
  if (m.order() != n)
    throw std::invalid_argument("sap_check: matrix has order " + std::to_string(m.order()) + " for " +
                                std::to_string(n) + " nodes");
  SapResult out;
  const auto missing = non_edges(g);
  for (const auto& [i, j] : missing) {
    if (std::abs(m(i, j)) > tol.abs_residual) {
      out.supported = false;
      out.diagnostic = "matrix is nonzero on non-edge {" + std::to_string(i) + "," + std::to_string(j) + "}";
      return out;
    }
  }

  // Unknowns: X on the non-edges, with (e_i e_j^T + e_j e_i^T)/sqrt(2) as unit directions.
  const double s = 1.0 / std::sqrt(2.0);
  if (!missing.empty()) {
    Matrix a(idx(n * n), idx(missing.size()));
    for (std::size_t k = 0; k < missing.size(); ++k) {
      const auto [i, j] = missing[k];
      Matrix mx = Matrix::Zero(idx(n), idx(n));
      mx.col(idx(j)) += s * m.dense().col(idx(i));
      mx.col(idx(i)) += s * m.dense().col(idx(j));
      a.col(idx(k)) = Eigen::Map<const Vector>(mx.data(), mx.size());
    }
    const Matrix null = matrix_nullspace(a, tol);
    out.dimension = static_cast<std::size_t>(null.cols());
    if (out.dimension > 0) {
      SymMatrix w(n);
      for (std::size_t k = 0; k < missing.size(); ++k) w.set(missing[k].first, missing[k].second, s * null(idx(k), 0));
      out.witness = w;
    }
  }
  out.pass = out.dimension == 0;

  const Matrix kernel = nullspace_basis(m, tol);
  out.corank = static_cast<std::size_t>(kernel.cols());
  std::vector<SymMatrix> mats;
  if (out.corank > 0) {
    for (const auto& [i, j] : nodes_and_edges(g))
      mats.push_back(SymMatrix::sym_outer(kernel.row(idx(i)).transpose(), kernel.row(idx(j)).transpose()));
  }
  out.span_route_rank = span_rank(mats, tol);
  out.span_route_pass = out.span_route_rank == svec_dim(out.corank);

  out.diagnostic = out.pass ? "no nonzero X vanishes on V u E with M X = 0"
                            : "solution space of dimension " + std::to_string(out.dimension);
  return out;
}

std::vector<SymMatrix> perturbation_space(const SymMatrix& x, std::span<const SymMatrix> constraints,
                                          const Tolerance& tol) {
  if (!psd_check(x, tol)) throw std::invalid_argument("perturbation_space: X is not positive semidefinite");
  const Matrix p = psd_factor(x, tol);
  const std::size_t r = static_cast<std::size_t>(p.cols());
  if (r == 0) return {};

  const auto small = projected(p, constraints);
  Matrix b(idx(small.size()), idx(svec_dim(r)));
  for (std::size_t k = 0; k < small.size(); ++k) b.row(idx(k)) = svec(small[k]).transpose();
  const Matrix gram_b = b.transpose() * b;
  const Matrix null = nullspace_basis(SymMatrix(gram_b), tol);

  std::vector<SymMatrix> out;
  for (Eigen::Index c = 0; c < null.cols(); ++c)
    out.emplace_back(Matrix(p * smat(null.col(c)).dense() * p.transpose()));
  return out;
}

bool extreme_point_check(const SymMatrix& x, std::span<const SymMatrix> active_constraints, const Tolerance& tol) {
  if (!psd_check(x, tol)) return false;
  const Matrix p = psd_factor(x, tol);
  const std::size_t r = static_cast<std::size_t>(p.cols());
  return span_rank(projected(p, active_constraints), tol) == svec_dim(r);
}

std::vector<SymMatrix> tangent_space(const SymMatrix& x, const Tolerance& tol) {
  const auto eig = sym_eigen(x);
  const double lmax = eig.eigenvalues.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> range, kernel;
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k)
    (lmax > 0.0 && std::abs(eig.eigenvalues[k]) > tol.rel_eig * lmax ? range : kernel).push_back(k);

  std::vector<SymMatrix> out;
  auto add = [&](Eigen::Index a, Eigen::Index b) {
    SymMatrix m = SymMatrix::sym_outer(eig.eigenvectors.col(a), eig.eigenvectors.col(b));
    out.push_back(m * (1.0 / m.frobenius_norm()));
  };
  for (std::size_t a = 0; a < range.size(); ++a) {
    for (std::size_t b = a; b < range.size(); ++b) add(range[a], range[b]);
    for (Eigen::Index k : kernel) add(range[a], k);
  }
  return out;
}

bool primal_nondegenerate(const SymMatrix& x, std::span<const SymMatrix> active_constraints, const Tolerance& tol) {
  const std::size_t n = x.order();
  const auto tangent = tangent_space(x, tol);
  Matrix rows(idx(active_constraints.size()), idx(svec_dim(n)));
  for (std::size_t k = 0; k < active_constraints.size(); ++k) rows.row(idx(k)) = svec(active_constraints[k]).transpose();
  const Matrix complement = active_constraints.empty() ? Matrix::Identity(idx(svec_dim(n)), idx(svec_dim(n)))
                                                       : matrix_nullspace(rows, tol);
  Matrix all(idx(svec_dim(n)), idx(tangent.size()) + complement.cols());
  all.leftCols(idx(tangent.size())) = stack(tangent, n);
  all.rightCols(complement.cols()) = complement;
  return matrix_rank(all, tol) == svec_dim(n);
}

bool dual_nondegenerate(const SymMatrix& z, std::span<const SymMatrix> active_constraints, const Tolerance& tol) {
  auto mats = tangent_space(z, tol);
  mats.insert(mats.end(), active_constraints.begin(), active_constraints.end());
  return span_rank(mats, tol) == svec_dim(z.order());
}

NondegeneracyReport sdp_nondegeneracy_checks(const std::optional<SymMatrix>& x, const std::optional<SymMatrix>& z,
                                             std::span<const SymMatrix> constraints,
                                             const std::vector<std::size_t>& active, const Tolerance& tol) {
  const auto chosen = pick(constraints, active);
  NondegeneracyReport out;
  if (x) out.primal = primal_nondegenerate(*x, chosen, tol);
  if (z) out.dual = dual_nondegenerate(*z, chosen, tol);
  return out;
}

std::vector<SymMatrix> non_edge_constraints(const TensegrityGraph& g) {
  std::vector<SymMatrix> out;
  for (const auto& [i, j] : non_edges(g)) out.push_back(SymMatrix::unit(g.node_count(), i, j));
  return out;
}

std::vector<SymMatrix> support_constraints(const TensegrityGraph& g) {
  std::vector<SymMatrix> out;
  for (const auto& [i, j] : nodes_and_edges(g)) out.push_back(SymMatrix::unit(g.node_count(), i, j));
  return out;
}

bool strict_complementarity_check(const SymMatrix& x, const SymMatrix& z, const Tolerance& tol) {
  if (x.order() != z.order()) throw std::invalid_argument("strict_complementarity_check: orders differ");
  const double residual = (x.dense() * z.dense()).cwiseAbs().maxCoeff();
  return residual < tol.abs_residual && rank_corank(x, tol).rank + rank_corank(z, tol).rank == x.order();
}

bool weak_activity_condition_check(const SymMatrix& z, std::span<const SymMatrix> constraints,
                                   const std::vector<std::size_t>& equalities, const std::vector<std::size_t>& j_x,
                                   const std::vector<std::size_t>& j_z, const Tolerance& tol) {
  std::vector<std::size_t> pending;
  for (std::size_t i : j_x)
    if (std::find(j_z.begin(), j_z.end(), i) == j_z.end()) pending.push_back(i);
  if (pending.empty()) return true;

  const std::size_t n = z.order();
  auto mats = tangent_space(z, tol);
  for (const auto& a : pick(constraints, equalities)) mats.push_back(a);
  for (const auto& a : pick(constraints, j_z)) mats.push_back(a);
  const Matrix basis = mats.empty() ? Matrix(idx(svec_dim(n)), 0) : column_space(stack(mats, n), tol);

  for (const auto& a : pick(constraints, pending)) {
    const Vector v = svec(a);
    const Vector residual = v - basis * (basis.transpose() * v);
    if (residual.norm() >= tol.abs_residual) return false;
  }
  return true;
}

std::optional<C5Completion> c5_angle_completion(const std::array<double, 5>& edge_angles, const Tolerance& tol) {
  constexpr double pi = std::numbers::pi;
  for (double t : edge_angles)
    if (!(t >= 0.0 && t <= pi)) throw std::invalid_argument("c5_angle_completion: angle " + std::to_string(t) +
                                                            " outside [0, pi]");
  double sum = 0.0;
  for (double t : edge_angles) sum += t;
  if (std::abs(sum - 4.0 * pi) > tol.abs_residual) return std::nullopt;

  C5Completion out;
  for (std::size_t i = 0; i < 5; ++i) {
    out.chords[i] = 2.0 * pi - edge_angles[i] - edge_angles[(i + 1) % 5];
    if (out.chords[i] < -tol.abs_residual || out.chords[i] > pi + tol.abs_residual) return std::nullopt;
    out.chords[i] = std::clamp(out.chords[i], 0.0, pi);
  }
  // In triangle (i, i+2, i+3) the edge angle is the sum of the two chord angles at i.
  for (std::size_t i = 0; i < 5; ++i) {
    const double lhs = edge_angles[(i + 2) % 5];
    const double rhs = out.chords[i] + out.chords[(i + 3) % 5];
    if (std::abs(lhs - rhs) > tol.abs_residual) return std::nullopt;
  }

  SymMatrix x = SymMatrix::identity(5);
  for (std::size_t i = 0; i < 5; ++i) {
    x.set(i, (i + 1) % 5, std::cos(edge_angles[i]));
    x.set(i, (i + 2) % 5, std::cos(out.chords[i]));
  }
  if (!psd_check(x, tol)) return std::nullopt;
  out.x = x;
  return out;
}

std::optional<std::size_t> gd_lower_bound(const Framework& f, const SymMatrix& z, const Tolerance& tol) {
  if (!certify_universal_completability(f, z, tol).overall) return std::nullopt;
  return rank_corank(gram(f), tol).rank;
}

std::optional<std::size_t> nu_lower_bound(const TensegrityGraph& g, const SymMatrix& m, const Tolerance& tol) {
  if (!psd_check(m, tol)) return std::nullopt;
  const auto sap = sap_check(g, m, tol);
  if (!sap.supported || !sap.pass) return std::nullopt;
  return sap.corank;
}

}  // namespace rigicert
