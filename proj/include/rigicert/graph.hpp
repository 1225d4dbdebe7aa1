#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rigicert {

enum class EdgeKind { Bar, Cable, Strut };

std::string_view to_string(EdgeKind kind);
/// Parses "bar" / "cable" / "strut"; throws std::invalid_argument otherwise.
EdgeKind parse_edge_kind(std::string_view text);

struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  EdgeKind kind = EdgeKind::Bar;

  friend bool operator==(const Edge&, const Edge&) = default;
};

using NodePair = std::pair<std::size_t, std::size_t>;

/// Simple graph on nodes 0..n-1 whose edges are tagged bar, cable or strut.
///
/// Immutable. The constructor normalizes every edge to i < j, sorts the edge
/// list lexicographically and rejects loops, duplicates and out-of-range
/// endpoints with std::invalid_argument.
class TensegrityGraph {
 public:
  TensegrityGraph() = default;
  TensegrityGraph(std::size_t n, std::vector<Edge> edges);

  /// All-bar graph from unordered pairs.
  static TensegrityGraph bars(std::size_t n, const std::vector<NodePair>& pairs);
  static TensegrityGraph complete(std::size_t n);
  static TensegrityGraph cycle(std::size_t n);
  static TensegrityGraph path(std::size_t n);

  std::size_t node_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::optional<EdgeKind> kind(std::size_t i, std::size_t j) const;
  bool has_edge(std::size_t i, std::size_t j) const { return kind(i, j).has_value(); }
  std::size_t degree(std::size_t v) const;
  std::size_t count(EdgeKind kind) const;
  bool bars_only() const { return count(EdgeKind::Bar) == edges_.size(); }

  friend bool operator==(const TensegrityGraph&, const TensegrityGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Unordered pairs i < j that are not edges, in lexicographic order.
std::vector<NodePair> non_edges(const TensegrityGraph& g);

/// Cone over G: a new apex with index n joined to every node by a bar.
/// Bars stay bars, cables become struts and struts become cables.
TensegrityGraph suspension(const TensegrityGraph& g);

/// K_r x H (adjacency A_{K_r} (x) A_H). Node (i, h) has index i * |V(H)| + h.
TensegrityGraph tensor_product_graph(std::size_t r, const TensegrityGraph& h);

std::size_t min_degree(const TensegrityGraph& g);

}  // namespace rigicert
