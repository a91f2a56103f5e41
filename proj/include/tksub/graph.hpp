#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tksub/types.hpp"

namespace tksub {

using Edge = std::pair<Vertex, Vertex>;

/// Undirected simple graph on vertices 0..n-1. Immutable after construction;
/// neighbor lists are sorted ascending.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  /// Builds a graph from an edge list. Throws std::invalid_argument on
  /// self-loops or out-of-range ids; duplicate edges are collapsed and counted
  /// in `duplicates` when non-null.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::size_t* duplicates = nullptr);

  std::size_t size() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_; }
  bool empty() const { return adj_.empty(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return adj_[static_cast<std::size_t>(v)];
  }
  int degree(Vertex v) const {
    return static_cast<int>(adj_[static_cast<std::size_t>(v)].size());
  }
  bool has_edge(Vertex u, Vertex v) const;
  bool valid(Vertex v) const {
    return v >= 0 && static_cast<std::size_t>(v) < adj_.size();
  }

  std::vector<Edge> edges() const;

  bool operator==(const Graph& other) const { return adj_ == other.adj_; }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t edges_ = 0;
};

/// A simple path, stored as its vertex sequence.
struct Path {
  std::vector<Vertex> vertices;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
  bool empty() const { return vertices.empty(); }
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
  Path reversed() const { return Path{{vertices.rbegin(), vertices.rend()}}; }
  /// Interior vertices (endpoints excluded), in path order.
  std::span<const Vertex> interior() const;

  bool operator==(const Path&) const = default;
};

/// True if `p` is nonempty, has no repeated vertex and every consecutive pair
/// is an edge of g.
bool is_simple_path(const Graph& g, const Path& p);

/// Concatenates paths sharing junction vertices (a ends where b starts).
Path join(const Path& a, const Path& b);

/// Average degree kept as the exact fraction 2|E| / |V|.
struct DegreeStats {
  std::int64_t twice_edges = 0;
  std::int64_t vertices = 0;
  int minimum = 0;
  int maximum = 0;

  double average() const {
    return vertices == 0 ? 0.0 : static_cast<double>(twice_edges) / static_cast<double>(vertices);
  }
};

DegreeStats degree_stats(const Graph& g);

/// True iff avg(a) >= avg(b) * num / den, compared exactly.
bool average_at_least(const DegreeStats& a, const DegreeStats& b, std::int64_t num,
                      std::int64_t den);

/// Side labels in {0,1}. The lowest id of each component gets side 0.
using Bipartition = std::vector<std::int8_t>;

std::optional<Bipartition> bipartition(const Graph& g);

/// Component label per vertex, components numbered by their lowest vertex.
std::vector<int> components(const Graph& g);

/// Vertices within `radius` of `sources` in g with `avoid` deleted.
/// Throws std::invalid_argument if a source is in `avoid`.
VertexSet ball(const Graph& g, std::span<const Vertex> sources, int radius,
               const VertexMask& avoid);
VertexSet ball(const Graph& g, std::span<const Vertex> sources, int radius);

inline constexpr int kUnreachable = -1;

/// BFS distances from `sources` in g - avoid (kUnreachable where not reached).
/// Search stops expanding past `max_depth` when it is non-negative.
std::vector<int> bfs_distances(const Graph& g, std::span<const Vertex> sources,
                               const VertexMask* avoid = nullptr, int max_depth = -1);

/// Parity class of u, v: 0 if equal, 1 if on opposite sides, 2 otherwise.
/// Requires g connected and bipartite; throws std::invalid_argument otherwise.
int pi(const Graph& g, Vertex u, Vertex v);

/// Same quantity from precomputed side labels (no connectivity check).
inline int pi(const Bipartition& sides, Vertex u, Vertex v) {
  if (u == v) return 0;
  return sides[static_cast<std::size_t>(u)] != sides[static_cast<std::size_t>(v)] ? 1 : 2;
}

/// A minimum-length cycle, as the vertex sequence c0..c_{g-1} (closing edge
/// c_{g-1}c0 implied). Among all shortest cycles the lexicographically
/// smallest sequence starting at its smallest vertex is returned.
std::optional<Path> shortest_cycle(const Graph& g);
std::optional<Path> shortest_cycle(const Graph& g, const VertexMask& avoid);

/// The subpath of p of length r that starts at endpoint v.
Path path_prefix(const Path& p, Vertex v, int r);

/// A graph together with the parent-graph id of each of its vertices.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_parent;

  Vertex parent(Vertex v) const { return to_parent[static_cast<std::size_t>(v)]; }
  Path lift(const Path& p) const;
  VertexSet lift(const VertexSet& s) const;
};

/// Induced subgraph on `keep` (any order; relabelled by ascending parent id).
Subgraph induced_subgraph(const Graph& g, const VertexSet& keep);

/// Subgraph of g keeping only edges accepted by `keep_edge`, all vertices kept.
template <class Pred>
Graph filter_edges(const Graph& g, Pred keep_edge) {
  std::vector<Edge> kept;
  for (const auto& [u, v] : g.edges())
    if (keep_edge(u, v)) kept.emplace_back(u, v);
  return Graph::from_edges(g.size(), kept);
}

}  // namespace tksub
