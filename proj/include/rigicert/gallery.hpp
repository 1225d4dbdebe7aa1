#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rigicert/certify.hpp"
#include "rigicert/framework.hpp"
#include "rigicert/stress.hpp"

namespace rigicert {

/// Facts a fixture claims about itself. Every set field is checked by
/// check_expectations; unset fields are not claimed.
struct Expectations {
  std::optional<std::size_t> corank;  // of the bundled stress
  std::optional<bool> completability;
  std::optional<bool> rigidity;  // certify_universal_rigidity on the bundled equilibrium stress
  std::optional<std::vector<std::string>> rigidity_failing;
  std::optional<std::size_t> spherical_space_dim;
  std::optional<std::size_t> equilibrium_space_dim;
  std::optional<std::size_t> gd_lower_bound;
  std::optional<std::size_t> nu_lower_bound;
  std::optional<std::size_t> c5_completion_rank;

  friend bool operator==(const Expectations&, const Expectations&) = default;
};

struct Fixture {
  std::string name;
  Framework framework;
  std::optional<SymMatrix> stress;
  StressKind stress_kind = StressKind::Spherical;
  Expectations expected;
};

struct ExpectationResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<ExpectationResult> check_expectations(const Fixture& fx, const Tolerance& tol = {});
bool all_pass(const std::vector<ExpectationResult>& results);

/// K_{2,2,2} in R^5. Nodes 0..5 carry e1, e2, e1+e2, e3, e4, e5; the three
/// non-adjacent pairs are {0,3}, {1,4}, {2,5}.
Fixture octahedron_fixture();

/// F_r in R^r: nodes 0..r-1 are the central clique (position e_i), then one
/// node per pair i < j in lexicographic order (position e_i + e_j).
Fixture fr_fixture(std::size_t r);

/// Triangulated triangle G_r in R^r. Node (i, l), 0-based with level l and
/// 0 <= i < r - l, is numbered level by level.
Fixture gr_fixture(std::size_t r);
std::size_t gr_node(std::size_t r, std::size_t i, std::size_t l);
/// Triangles {(i,l), (i+1,l), (i,l+1)} as node triples.
std::vector<std::array<std::size_t, 3>> gr_black_triangles(std::size_t r);

/// K_r x H with node (i, h) at w_i in R^{r-1}. H must be a k-regular bar
/// graph whose adjacency eigenvalues other than the largest satisfy
/// |lambda| < k / (r - 1); a violation throws std::invalid_argument naming
/// the eigenvalue. Without w the vertices of a centered regular simplex with
/// unit-length vectors are used.
Fixture tensor_fixture(std::size_t r, const TensegrityGraph& h, const std::optional<std::vector<Vector>>& w = {});

/// Two 5-cycle frameworks in the plane: the first carries a psd stress of
/// corank 2, the second carries no nonzero stress at all.
std::pair<Fixture, Fixture> c5_fixtures();

/// Four-node bar framework in the plane with a psd equilibrium stress of
/// corank 3 whose edge directions lie on a conic at infinity.
Fixture four_node_fixture();

/// Edge angles arccos X_{i,i+1} of a framework on the 5-cycle 0-1-2-3-4-0.
std::array<double, 5> c5_edge_angles(const Framework& f);

/// Every fixture at default parameters: octahedron, F_2..F_5, G_2..G_5,
/// K_2 x C_5, K_3 x K_4, both C_5 frameworks and the four-node one.
std::vector<Fixture> all_fixtures();

}  // namespace rigicert
