#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rigicert/framework.hpp"
#include "rigicert/numkit.hpp"

namespace rigicert {

enum class StressKind { Spherical, Equilibrium };

std::string_view to_string(StressKind kind);

/// Outcome of checking one candidate stress matrix against a framework.
struct StressReport {
  StressKind kind = StressKind::Spherical;
  bool support_ok = false;
  bool sign_ok = false;
  bool psd_ok = false;
  bool equilibrium_ok = false;
  bool corank_ok = false;
  std::size_t corank = 0;
  std::size_t expected_corank = 0;
  double min_eigenvalue = 0.0;
  double max_equilibrium_residual = 0.0;
  double max_support_violation = 0.0;
  double max_sign_violation = 0.0;

  bool all_ok() const { return support_ok && sign_ok && psd_ok && equilibrium_ok && corank_ok; }
};

/// Required sign of a stress entry on an edge: +1 for >= 0, -1 for <= 0,
/// 0 when unconstrained (bars).
///
/// Spherical stresses are nonnegative on cables and nonpositive on struts.
/// Equilibrium stresses use the opposite entry sign (cable tension means a
/// nonpositive off-diagonal entry of Omega = sum w_ij F_ij with w_ij >= 0).
int required_sign(StressKind kind, EdgeKind edge);

/// Orthonormal basis of {Z in S^n : Z supported on V u E, Z P = 0}.
std::vector<SymMatrix> spherical_stress_space(const Framework& f, const Tolerance& tol = {});

/// Orthonormal basis of {Omega = sum_{ij in E} w_ij F_ij : Omega P = 0}.
std::vector<SymMatrix> equilibrium_stress_space(const Framework& f, const Tolerance& tol = {});

std::vector<SymMatrix> stress_space(const Framework& f, StressKind kind, const Tolerance& tol = {});

/// Throws std::invalid_argument when Z is not of order n.
StressReport verify_spherical_stress(const Framework& f, const SymMatrix& z, const Tolerance& tol = {});
StressReport verify_equilibrium_stress(const Framework& f, const SymMatrix& omega, const Tolerance& tol = {});
StressReport verify_stress(const Framework& f, StressKind kind, const SymMatrix& m, const Tolerance& tol = {});

/// Lifts a spherical stress Z of G(p) to an equilibrium stress of the
/// suspension framework (apex appended as the last node):
///   Omega = [[Z, w], [w^T, w0]],  w = -Z e,  w0 = -w^T e.
/// Throws std::invalid_argument naming the failed condition when Z is not
/// supported on G or Z P != 0.
SymMatrix lift_stress(const Framework& f, const SymMatrix& z, const Tolerance& tol = {});

/// Deletes the last row and column (the suspension apex).
SymMatrix restrict_stress(const SymMatrix& omega);

struct FindStressParams {
  int max_iterations = 10000;
  double convergence = 1e-10;
  double min_norm = 1e-6;
};

/// Heuristic search for a nonzero psd stress of the requested kind.
///
/// Cyclic projections onto the trace-one slice of the stress space, the
/// sign box of the cables and struts, and the psd cone, started from the
/// projection of the identity. The final iterate is polished on the face
/// spanned by its dominant eigenvectors. Incomplete: it may miss feasible
/// points. Any returned matrix passes the support, sign, psd and equilibrium
/// checks of verify_stress; maximal corank is not guaranteed.
std::optional<SymMatrix> find_psd_stress(const Framework& f, StressKind kind, const FindStressParams& params = {},
                                         const Tolerance& tol = {});

}  // namespace rigicert
