#pragma once

// Data-parallel kernels. Each has an OpenMP version (tksub::kernels) and a
// plain serial reference (tksub::kernels::serial) with identical results; the
// serial versions back the equivalence tests and the benchmark baseline.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tksub/graph.hpp"

namespace tksub::kernels {

/// Length of a shortest cycle in g - avoid, 0 when acyclic.
int girth(const Graph& g, const VertexMask& avoid);

/// All-pairs BFS distances (kUnreachable for different components).
std::vector<std::vector<int>> distance_matrix(const Graph& g);

/// Scan of all vertex subsets X of a graph with n <= 32 given as neighbor
/// bitmasks. A subset violates when lo <= |X| <= hi and
/// |N(X)| < limit[|X|]. Reports the numerically smallest violating mask.
struct SubsetScan {
  std::uint64_t checked = 0;
  std::optional<std::uint32_t> violation;
};
SubsetScan scan_subsets(std::span<const std::uint32_t> neighbor_masks, int lo, int hi,
                        std::span<const double> limit);

/// For each root (in order) and radius r = 0, 1, ... checks the ball B^r(root)
/// and the sphere at distance r against the same rule. Reports the first
/// violation in root order.
struct BallScan {
  std::uint64_t checked = 0;
  std::optional<VertexSet> violation;
};
BallScan scan_balls(const Graph& g, std::span<const Vertex> roots, int lo, int hi,
                    std::span<const double> limit);

/// Lexicographically first k-subset of {0..n-1} accepted by `accept`, which
/// must be safe to call concurrently.
std::optional<std::vector<int>> first_combination(
    int n, int k, const std::function<bool(std::span<const int>)>& accept);

namespace serial {
int girth(const Graph& g, const VertexMask& avoid);
std::vector<std::vector<int>> distance_matrix(const Graph& g);
SubsetScan scan_subsets(std::span<const std::uint32_t> neighbor_masks, int lo, int hi,
                        std::span<const double> limit);
BallScan scan_balls(const Graph& g, std::span<const Vertex> roots, int lo, int hi,
                    std::span<const double> limit);
std::optional<std::vector<int>> first_combination(
    int n, int k, const std::function<bool(std::span<const int>)>& accept);
}  // namespace serial

/// Size of the external neighborhood of `members` (given as a mask).
int boundary_size(const Graph& g, const VertexMask& members, std::span<const Vertex> list);

}  // namespace tksub::kernels
