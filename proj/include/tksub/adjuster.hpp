#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tksub/connect.hpp"

namespace tksub {

/// (v1, F1, v2, F2, A) with one stored v1,v2-path of each length
/// base_length + 2i, i = 0..k, all inside A + {v1, v2}.
struct Adjuster {
  Vertex v1 = -1;
  Vertex v2 = -1;
  Expansion F1;
  Expansion F2;
  VertexSet A;
  int k = 0;
  int base_length = 0;
  std::vector<Path> path_family;

  /// Every vertex of the gadget.
  VertexSet vertices() const;
};

/// Clauses: A1 (A, F1, F2 pairwise disjoint), A2 (F1, F2 are (D,m)-expansions
/// of v1, v2), A3 (|A| <= 10mk), A4 (path family), plus base <= |A| + 1.
Verdict verify_adjuster(const Graph& g, const Adjuster& adj, int D, int m);

/// Smallest l' such that paths of every length l', l'+2, ..., l'+2k exist in
/// G[A + {v1,v2}]; exact search, meant for small gadgets. Equals
/// adj.base_length when the stored base is minimal.
int minimal_base_length(const Graph& g, const Adjuster& adj);

/// A range-1 adjuster around a shortest cycle of G - avoid. Tries every
/// placement of x1, x2 at cycle distance l0 - 1, and on failure retries with
/// the previous cycle's vertices excluded, up to `max_attempts` cycles.
/// Throws std::invalid_argument when g is not bipartite.
Outcome<Adjuster> build_simple_adjuster(const Graph& g, int D, int max_m, const VertexSet& avoid,
                                        int max_attempts = 8);

struct ChainResult {
  std::optional<Adjuster> adjuster;  // largest range reached
  Status status = Status::Ok;
  int failed_stage = 0;  // 1-based stage of the failure, 0 on success
  std::string detail;

  bool ok() const { return status == Status::Ok; }
};

/// Range-target_r adjuster built by joining simple adjusters one at a time
/// through short connections between their expansions.
ChainResult chain_adjusters(const Graph& g, int target_r, int D, int m, const VertexSet& avoid);

struct PathPair {
  Path p;  // from root(f1) or root(f2) ...
  Path q;  // ... to root(f3) or root(f4); q starts at the other of the first two
};

/// Vertex-disjoint P, Q joining {root(f1), root(f2)} to {root(f3), root(f4)}
/// in G - avoid with target_sum <= l(P) + l(Q) <= target_sum + slack.
/// Throws std::invalid_argument unless the four expansions are pairwise
/// disjoint and disjoint from avoid.
Outcome<PathPair> connect_pair_sum_length(const Graph& g, const Expansion& f1, const Expansion& f2,
                                          const Expansion& f3, const Expansion& f4, int target_sum,
                                          int slack, const VertexSet& avoid,
                                          std::uint64_t search_budget = 200'000);

struct ConnectConfig {
  int adjuster_range = 2;
  int adjuster_D = 2;
  int m = 8;
  std::uint64_t search_budget = 200'000;
  bool use_adjuster = true;
  bool direct_fallback = true;
};

/// Simple root(f1), root(f2)-path of length exactly ell in G - avoid. First
/// attempts adjuster + pair-sum routing, then a direct exact-length search.
/// `detail` of a success names the stage used ("adjuster" or "direct").
/// Throws std::invalid_argument if g is not bipartite or the expansions
/// overlap each other or avoid.
Outcome<Path> connect_exact_length(const Graph& g, const Expansion& f1, const Expansion& f2,
                                   int ell, const VertexSet& avoid, const ConnectConfig& cfg = {});

}  // namespace tksub
