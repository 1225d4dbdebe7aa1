#include "rigicert/framework.hpp"

#include <functional>
#include <stdexcept>

namespace rigicert {

Framework::Framework(TensegrityGraph graph, Matrix positions, bool generic)
    : graph_(std::move(graph)), positions_(std::move(positions)), generic_(generic) {
  if (static_cast<std::size_t>(positions_.rows()) != graph_.node_count())
    throw std::invalid_argument("framework has " + std::to_string(positions_.rows()) +
                                " positions for " + std::to_string(graph_.node_count()) + " nodes");
  if (positions_.cols() < 1) throw std::invalid_argument("framework dimension must be at least 1");
  if (graph_.node_count() < 1) throw std::invalid_argument("framework needs at least one node");
  if (!positions_.allFinite()) throw std::invalid_argument("framework positions must be finite");
}

SymMatrix gram(const Framework& f) {
  return SymMatrix(Matrix(f.positions() * f.positions().transpose()));
}

Configuration configuration(const Framework& f) {
  const Eigen::Index n = f.positions().rows();
  const Eigen::Index d = f.positions().cols();
  Configuration c;
  c.p = f.positions();
  c.augmented.resize(n, d + 1);
  c.augmented.leftCols(d) = f.positions();
  c.augmented.col(d).setOnes();
  return c;
}

SymMatrix spherical_constraint_matrix(const Framework& f, std::size_t i, std::size_t j) {
  if (i >= f.node_count() || j >= f.node_count()) throw std::out_of_range("node index out of range");
  return SymMatrix::sym_outer(f.position(i), f.position(j));
}

SymMatrix euclidean_constraint_matrix(const Framework& f, std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("euclidean_constraint_matrix needs distinct nodes");
  if (i >= f.node_count() || j >= f.node_count()) throw std::out_of_range("node index out of range");
  return SymMatrix::outer(f.position(i) - f.position(j));
}

Framework extend_framework(const Framework& f) {
  const Eigen::Index n = f.positions().rows();
  Matrix pos = Matrix::Zero(n + 1, f.positions().cols());
  pos.topRows(n) = f.positions();
  return Framework(suspension(f.graph()), std::move(pos), f.generic());
}

SpanChecks span_checks(const Framework& f, const Tolerance& tol) {
  const auto c = configuration(f);
  SpanChecks out;
  out.linear_rank = matrix_rank(c.p, tol);
  out.affine_rank = matrix_rank(c.augmented, tol);
  out.linear_span_full = out.linear_rank == f.dimension();
  out.affine_span_full = out.affine_rank == f.dimension() + 1;
  return out;
}

PartialMatrix partial_matrix_of(const Framework& f) {
  const SymMatrix x = gram(f);
  PartialMatrix out{f.graph(), {}};
  for (const auto& [i, j] : nodes_and_edges(f.graph())) out.values[{i, j}] = x(i, j);
  return out;
}

bool general_position_heuristic(const Framework& f, const Tolerance& tol) {
  const std::size_t n = f.node_count();
  const std::size_t k = f.dimension() + 1;
  if (n < k) return matrix_rank(configuration(f).augmented, tol) == n;
  const Matrix aug = configuration(f).augmented;
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
    if (pick.size() == k) {
      Matrix sub(static_cast<Eigen::Index>(k), aug.cols());
      for (std::size_t r = 0; r < k; ++r) sub.row(static_cast<Eigen::Index>(r)) = aug.row(static_cast<Eigen::Index>(pick[r]));
      return matrix_rank(sub, tol) == k;
    }
    for (std::size_t v = start; v < n; ++v) {
      pick.push_back(v);
      const bool ok = rec(v + 1);
      pick.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(0);
}

std::vector<NodePair> nodes_and_edges(const TensegrityGraph& g) {
  std::vector<NodePair> out;
  out.reserve(g.node_count() + g.edge_count());
  for (std::size_t v = 0; v < g.node_count(); ++v) out.emplace_back(v, v);
  for (const auto& e : g.edges()) out.emplace_back(e.i, e.j);
  return out;
}

}  // namespace rigicert
