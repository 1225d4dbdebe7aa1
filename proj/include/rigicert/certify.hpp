#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rigicert/framework.hpp"
#include "rigicert/numkit.hpp"
#include "rigicert/stress.hpp"

namespace rigicert {

enum class CertificateKind { UniversalCompletability, UniversalRigidity, GenericUniversalRigidity };

std::string_view to_string(CertificateKind kind);

struct Condition {
  std::string name;
  bool pass = false;
  bool required = true;
  std::string diagnostic;
  std::map<std::string, double> numbers;
};

/// Ordered record of every checked condition. `overall` is the AND of the
/// required ones; mathematical failure never throws.
struct Certificate {
  CertificateKind kind = CertificateKind::UniversalCompletability;
  std::vector<Condition> conditions;
  bool overall = false;

  const Condition* find(std::string_view name) const;
  /// Names of the required conditions that failed, in check order.
  std::vector<std::string> failing() const;
};

using ActivePairs = std::vector<NodePair>;

/// V u B u {cable/strut ij : |Z_ij| > abs_residual}, diagonal pairs first.
ActivePairs spherical_active_pairs(const Framework& f, const SymMatrix& z, const Tolerance& tol = {});
/// B u {cable/strut ij : |Omega_ij| > abs_residual}.
ActivePairs equilibrium_active_pairs(const Framework& f, const SymMatrix& omega, const Tolerance& tol = {});

struct SpanRankCheck {
  bool pass = false;
  std::size_t span_rank = 0;
  std::size_t full_rank = 0;  // d(d+1)/2
  /// Unit-norm R orthogonal to every constraint matrix when the check fails.
  std::optional<SymMatrix> witness;
};

/// Rank of {sym(p_i p_j^T) : ij in pairs} against d(d+1)/2.
SpanRankCheck gram_nondegeneracy_check(const Framework& f, const ActivePairs& pairs, const Tolerance& tol = {});

/// Rank of {(p_i - p_j)(p_i - p_j)^T : ij in pairs} against d(d+1)/2. A
/// failing check carries a nonzero quadratic form vanishing on all the edge
/// directions. Throws std::invalid_argument on a diagonal pair.
SpanRankCheck conic_at_infinity_check(const Framework& f, const ActivePairs& pairs, const Tolerance& tol = {});

/// Throws std::invalid_argument when Z is not of order n.
Certificate certify_universal_completability(const Framework& f, const SymMatrix& z, const Tolerance& tol = {});
Certificate certify_universal_rigidity(const Framework& f, const SymMatrix& omega, const Tolerance& tol = {});
/// Variant for frameworks declared generic: adds a minimum degree test on the
/// support graph of Omega (at least d). The conic check is still run and
/// required; affine span is reported only. An unset generic flag fails
/// "declared_generic".
Certificate certify_generic_universal_rigidity(const Framework& f, const SymMatrix& omega,
                                               const Tolerance& tol = {});

struct SapResult {
  bool pass = false;
  bool supported = true;
  std::size_t dimension = 0;  // dim {X : X = 0 on V u E, M X = 0}
  std::optional<SymMatrix> witness;
  /// Second route through the kernel vectors of M.
  bool span_route_pass = false;
  std::size_t span_route_rank = 0;
  std::size_t corank = 0;
  std::string diagnostic;
};

/// Strong Arnold Property of M for the graph G. M must vanish on the
/// non-edges; otherwise the result fails with supported = false.
SapResult sap_check(const TensegrityGraph& g, const SymMatrix& m, const Tolerance& tol = {});

/// Basis of {P R P^T : <P R P^T, A_i> = 0 for all i} where X = P P^T and P
/// holds the eigenvectors of the nonzero eigenvalues scaled by their square
/// roots. The nullspace is computed from the eigenvalues of B^T B (rows of B
/// are the vectorized P^T A_i P), so eigenvalues of B^T B below
/// rel_eig * max count as zero. Throws std::invalid_argument unless X is psd.
std::vector<SymMatrix> perturbation_space(const SymMatrix& x, std::span<const SymMatrix> constraints,
                                          const Tolerance& tol = {});

/// span_rank {P^T A_i P} == r(r+1)/2 with r = rank X.
bool extreme_point_check(const SymMatrix& x, std::span<const SymMatrix> active_constraints,
                         const Tolerance& tol = {});

/// Basis of the tangent space T_X = {Q [[A, B], [B^T, 0]] Q^T}, the first
/// block indexed by the range of X.
std::vector<SymMatrix> tangent_space(const SymMatrix& x, const Tolerance& tol = {});

/// T_X + lin{A_i}^perp = S^n.
bool primal_nondegenerate(const SymMatrix& x, std::span<const SymMatrix> active_constraints,
                          const Tolerance& tol = {});
/// T_Z + lin{A_i} = S^n.
bool dual_nondegenerate(const SymMatrix& z, std::span<const SymMatrix> active_constraints, const Tolerance& tol = {});

struct NondegeneracyReport {
  std::optional<bool> primal;
  std::optional<bool> dual;
};

/// Runs whichever of the two checks has a matrix, on the constraints
/// selected by `active`.
NondegeneracyReport sdp_nondegeneracy_checks(const std::optional<SymMatrix>& x, const std::optional<SymMatrix>& z,
                                             std::span<const SymMatrix> constraints,
                                             const std::vector<std::size_t>& active, const Tolerance& tol = {});

/// The non-edge constraint family {E_ij : ij not in E}.
std::vector<SymMatrix> non_edge_constraints(const TensegrityGraph& g);
/// {E_ij : ij in V u E}, diagonal first.
std::vector<SymMatrix> support_constraints(const TensegrityGraph& g);

/// max |X Z| < abs_residual and rank X + rank Z = n.
bool strict_complementarity_check(const SymMatrix& x, const SymMatrix& z, const Tolerance& tol = {});

/// For every i in J_X \ J_Z: A_i in T_Z + lin{A_k : k in I u J_Z}. Indices
/// refer to `constraints`. Vacuously true when the difference is empty.
bool weak_activity_condition_check(const SymMatrix& z, std::span<const SymMatrix> constraints,
                                   const std::vector<std::size_t>& equalities, const std::vector<std::size_t>& j_x,
                                   const std::vector<std::size_t>& j_z, const Tolerance& tol = {});

struct C5Completion {
  /// chords[i] is the angle between nodes i and i+2 (mod 5).
  std::array<double, 5> chords{};
  SymMatrix x{5};
};

/// edge_angles[i] is the angle between nodes i and i+1 (mod 5). When the
/// angles sum to 4 pi the chord angles are forced; they are checked against
/// [0, pi], the triangle equalities and psd-ness of the resulting cosine
/// matrix. Returns nothing when any of this fails. Throws
/// std::invalid_argument for an angle outside [0, pi].
std::optional<C5Completion> c5_angle_completion(const std::array<double, 5>& edge_angles, const Tolerance& tol = {});

/// rank gram(F) when the completability certificate for (F, Z) passes.
std::optional<std::size_t> gd_lower_bound(const Framework& f, const SymMatrix& z, const Tolerance& tol = {});
/// corank M when M is psd, supported on V u E and has the SAP.
std::optional<std::size_t> nu_lower_bound(const TensegrityGraph& g, const SymMatrix& m, const Tolerance& tol = {});

}  // namespace rigicert
