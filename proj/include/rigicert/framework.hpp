#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "rigicert/graph.hpp"
#include "rigicert/numkit.hpp"

namespace rigicert {

/// A tensegrity graph with one position per node in R^d.
///
/// Positions are stored as the rows of the n x d configuration matrix.
/// `generic` is a user declaration and is never inferred from the data.
class Framework {
 public:
  Framework(TensegrityGraph graph, Matrix positions, bool generic = false);

  const TensegrityGraph& graph() const { return graph_; }
  std::size_t node_count() const { return graph_.node_count(); }
  std::size_t dimension() const { return static_cast<std::size_t>(positions_.cols()); }
  const Matrix& positions() const { return positions_; }
  Vector position(std::size_t i) const { return positions_.row(static_cast<Eigen::Index>(i)).transpose(); }
  bool generic() const { return generic_; }

 private:
  TensegrityGraph graph_;
  Matrix positions_;
  bool generic_ = false;
};

/// Values on the diagonal and on every edge of a graph.
struct PartialMatrix {
  TensegrityGraph graph;
  std::map<NodePair, double> values;  // keys (i, j) with i <= j
};

/// Gram(p_1, ..., p_n) = (p_i^T p_j).
SymMatrix gram(const Framework& f);

struct Configuration {
  Matrix p;          // n x d, rows are positions
  Matrix augmented;  // n x (d+1), P with a trailing all-ones column
};

Configuration configuration(const Framework& f);

/// (p_i p_j^T + p_j p_i^T) / 2, a d x d matrix; p_i p_i^T when i == j.
SymMatrix spherical_constraint_matrix(const Framework& f, std::size_t i, std::size_t j);

/// (p_i - p_j)(p_i - p_j)^T. Throws std::invalid_argument when i == j.
SymMatrix euclidean_constraint_matrix(const Framework& f, std::size_t i, std::size_t j);

/// Suspension framework: apex appended as node n and placed at the origin.
Framework extend_framework(const Framework& f);

struct SpanChecks {
  bool linear_span_full = false;
  bool affine_span_full = false;
  std::size_t linear_rank = 0;
  std::size_t affine_rank = 0;
};

SpanChecks span_checks(const Framework& f, const Tolerance& tol = {});

PartialMatrix partial_matrix_of(const Framework& f);

/// Heuristic necessary condition for genericity: every d+1 positions are
/// affinely independent. Only feasible for small n; a positive answer does
/// not imply genericity.
bool general_position_heuristic(const Framework& f, const Tolerance& tol = {});

/// Pairs {i,i} for every node followed by the edges of the graph.
std::vector<NodePair> nodes_and_edges(const TensegrityGraph& g);

}  // namespace rigicert
