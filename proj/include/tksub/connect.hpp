#pragma once

#include <cstdint>
#include <vector>

#include "tksub/graph.hpp"

namespace tksub {

/// A (D,m)-expansion of `root`: a connected vertex set of size D containing
/// root, every member within distance m of root inside the set.
struct Expansion {
  Vertex root = -1;
  VertexSet members;
  int radius_bound = 0;

  int size() const { return static_cast<int>(members.size()); }
};

/// Checks both expansion invariants exactly (connectivity, radius) plus
/// |members| == D when D >= 0.
Verdict verify_expansion(const Graph& g, const Expansion& e, int D = -1);

/// Keeps the first `target` members in BFS order from the root inside the
/// induced subgraph; the result is again an expansion with the same radius.
Expansion trim_expansion(const Graph& g, const Expansion& e, int target);

/// Shortest path from a to b in g - avoid. Among shortest paths the one
/// ending at the smallest b vertex is returned, with BFS parents chosen by
/// discovery order (sources and neighbors ascending). max_len < 0 means no
/// cap. Throws std::invalid_argument if a or b is empty or meets avoid.
Outcome<Path> connect_avoiding(const Graph& g, const VertexSet& a, const VertexSet& b,
                               const VertexSet& avoid, int max_len = -1);

/// BFS from v in g - avoid adding whole layers until target_D vertices are
/// collected, keeping the smallest ids of the last layer.
Outcome<Expansion> grow_expansion(const Graph& g, Vertex v, int target_D, int max_m,
                                  const VertexSet& avoid);

struct BallGrowth {
  VertexSet ball;
  bool met = false;
};

/// B^radius(y) in g - w, and whether it reached `target` vertices.
/// Throws std::invalid_argument if y meets w.
BallGrowth grow_ball_avoiding(const Graph& g, const VertexSet& y, const VertexSet& w, int radius,
                              int target);

/// Paths leaving a common root inside a home set.
struct PathFan {
  Vertex root = -1;
  VertexSet home;
  std::vector<Path> paths;
};

/// True iff every path starts at the root, stays in home, and path i is a
/// shortest path between its ends in home minus the earlier paths plus root.
bool check_consecutive_shortest(const Graph& g, const PathFan& fan);

/// Simple s,t-path with exactly `length` edges avoiding `blocked`, found by
/// depth-first search (neighbors ascending) with distance, parity and
/// counting cuts. NoPath when the search space is exhausted,
/// BudgetExceeded when more than `node_budget` search nodes were expanded.
Outcome<Path> find_path_exact_length(const Graph& g, Vertex s, Vertex t, int length,
                                     const VertexMask& blocked,
                                     std::uint64_t node_budget = 2'000'000);

}  // namespace tksub
