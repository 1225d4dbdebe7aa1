#include "rigicert/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace rigicert {

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Bar:
      return "bar";
    case EdgeKind::Cable:
      return "cable";
    case EdgeKind::Strut:
      return "strut";
  }
  return "bar";
}

EdgeKind parse_edge_kind(std::string_view text) {
  if (text == "bar") return EdgeKind::Bar;
  if (text == "cable") return EdgeKind::Cable;
  if (text == "strut") return EdgeKind::Strut;
  throw std::invalid_argument("unknown edge kind '" + std::string(text) + "'");
}

TensegrityGraph::TensegrityGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.i == e.j) throw std::invalid_argument("loop at node " + std::to_string(e.i));
    if (e.i >= n_ || e.j >= n_)
      throw std::invalid_argument("edge {" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                  "} has an endpoint outside 0.." + std::to_string(n_ == 0 ? 0 : n_ - 1));
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  for (std::size_t k = 1; k < edges_.size(); ++k)
    if (edges_[k - 1].i == edges_[k].i && edges_[k - 1].j == edges_[k].j)
      throw std::invalid_argument("duplicate edge {" + std::to_string(edges_[k].i) + "," +
                                  std::to_string(edges_[k].j) + "}");
}

TensegrityGraph TensegrityGraph::bars(std::size_t n, const std::vector<NodePair>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [i, j] : pairs) edges.push_back({i, j, EdgeKind::Bar});
  return TensegrityGraph(n, std::move(edges));
}

TensegrityGraph TensegrityGraph::complete(std::size_t n) {
  std::vector<NodePair> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return bars(n, pairs);
}

TensegrityGraph TensegrityGraph::cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 nodes");
  std::vector<NodePair> pairs;
  for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(i, (i + 1) % n);
  return bars(n, pairs);
}

TensegrityGraph TensegrityGraph::path(std::size_t n) {
  std::vector<NodePair> pairs;
  for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return bars(n, pairs);
}

std::optional<EdgeKind> TensegrityGraph::kind(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(i, j),
                             [](const Edge& e, const NodePair& p) { return std::tie(e.i, e.j) < std::tie(p.first, p.second); });
  if (it != edges_.end() && it->i == i && it->j == j) return it->kind;
  return std::nullopt;
}

std::size_t TensegrityGraph::degree(std::size_t v) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.i == v || e.j == v; }));
}

std::size_t TensegrityGraph::count(EdgeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [kind](const Edge& e) { return e.kind == kind; }));
}

std::vector<NodePair> non_edges(const TensegrityGraph& g) {
  std::vector<NodePair> out;
  const std::size_t n = g.node_count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!g.has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

TensegrityGraph suspension(const TensegrityGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() + n);
  for (const auto& e : g.edges()) {
    EdgeKind k = e.kind;
    if (k == EdgeKind::Cable)
      k = EdgeKind::Strut;
    else if (k == EdgeKind::Strut)
      k = EdgeKind::Cable;
    edges.push_back({e.i, e.j, k});
  }
  for (std::size_t v = 0; v < n; ++v) edges.push_back({v, n, EdgeKind::Bar});
  return TensegrityGraph(n + 1, std::move(edges));
}

TensegrityGraph tensor_product_graph(std::size_t r, const TensegrityGraph& h) {
  if (r < 2) throw std::invalid_argument("tensor_product_graph: r must be at least 2");
  if (!h.bars_only()) throw std::invalid_argument("tensor_product_graph: H must have bars only");
  const std::size_t m = h.node_count();
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b)
      for (const auto& e : h.edges()) {
        edges.push_back({a * m + e.i, b * m + e.j, EdgeKind::Bar});
        edges.push_back({a * m + e.j, b * m + e.i, EdgeKind::Bar});
      }
  return TensegrityGraph(r * m, std::move(edges));
}

std::size_t min_degree(const TensegrityGraph& g) {
  if (g.node_count() == 0) return 0;
  std::vector<std::size_t> deg(g.node_count(), 0);
  for (const auto& e : g.edges()) {
    ++deg[e.i];
    ++deg[e.j];
  }
  return *std::min_element(deg.begin(), deg.end());
}

}  // namespace rigicert
