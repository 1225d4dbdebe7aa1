#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rigicert/gallery.hpp"

namespace rigicert {

/// extreme_point_check, perturbation_space and gram_nondegeneracy_check on
/// gram(F) with the V u E constraints must give the same verdict.
ExpectationResult cross_oracle_agreement(const Framework& f, const Tolerance& tol = {});

/// Lift Z to the suspension and compare the two certificate verdicts. Also
/// checks corank Omega = corank Z + 1 and the residuals of Omega e and
/// Omega P_a against `residual` (1e-10 by default).
ExpectationResult suspension_agreement(const Framework& f, const SymMatrix& z, const Tolerance& tol = {},
                                       double residual = 1e-10);

/// The nullspace, kernel span-rank and primal nondegeneracy routes to the
/// SAP must agree. M is expected to be psd and supported on G.
ExpectationResult sap_route_agreement(const TensegrityGraph& g, const SymMatrix& m, const Tolerance& tol = {});

/// Random graph with edge probability `p` (all bars), node count n.
TensegrityGraph random_graph(std::mt19937_64& rng, std::size_t n, double p);

/// Random bar framework: n nodes with uniform positions in [-1, 1]^d.
Framework random_framework(std::mt19937_64& rng, std::size_t n, std::size_t d, double edge_probability = 0.5);

/// Random psd matrix supported on V u E: a nonnegative integer diagonal plus
/// a few terms w (e_i + s e_j)(e_i + s e_j)^T over edges ij, with small
/// integer weights w and signs s, so that rank decisions are exact.
SymMatrix random_supported_psd(std::mt19937_64& rng, const TensegrityGraph& g);

struct SuiteItem {
  std::string fixture;
  std::string check;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::vector<SuiteItem> items;
  bool all_pass() const;
};

/// Every fixture's expectations, the cross-oracle and suspension invariants
/// on every fixture, and the cross-oracle and SAP invariants on a fixed-seed
/// random batch. Items are ordered by fixture name.
SuiteReport run_suite(const Tolerance& tol = {}, std::uint64_t seed = 20120101, std::size_t random_count = 100);

}  // namespace rigicert
