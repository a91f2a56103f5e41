#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tksub/graph.hpp"

namespace tksub {

/// Parameters of the sublinear expansion rate. `k` is the scale below which
/// no expansion is demanded; in applications k = epsilon2 * d.
struct ExpanderParams {
  double epsilon1 = 0.5;
  double k = 1.0;
  double epsilon2 = 0.1;

  /// Throws std::invalid_argument unless 0 < epsilon1 < 1, k > 0, 0 < epsilon2 < 1.
  void validate() const;
};

/// Required expansion rate for a set of size x: 0 below k/5, otherwise
/// epsilon1 / ln^2(15x/k).
double epsilon(double x, const ExpanderParams& params);

enum class CheckMode { Exact, Sampled };

const char* mode_name(CheckMode m);

/// Limits for expansion checking. Graphs with at most `exhaustive_cap`
/// vertices are checked over every subset in either mode.
struct ExpansionBudget {
  CheckMode mode = CheckMode::Sampled;
  int exhaustive_cap = 20;
  int subset_size_cap = 10;
  std::uint64_t max_subsets = 200'000;
  int samples = 2'000;
  int max_ball_roots = 1'024;
  std::uint64_t seed = 1;
};

struct ExpansionReport {
  CheckMode mode = CheckMode::Exact;
  bool holds = true;
  std::optional<VertexSet> witness;
  std::uint64_t subsets_checked = 0;
  /// True only when every subset in the size range was examined.
  bool exhaustive = false;
};

/// Smallest and largest set sizes the expansion condition ranges over:
/// max(1, ceil(k/2)) and floor(n/2).
std::pair<int, int> expansion_size_range(std::size_t n, const ExpanderParams& params);

/// Independent check of one set: true if k/2 <= |X| <= n/2 and
/// |N(X)| < epsilon(|X|) * |X|.
bool violates_expansion(const Graph& g, const VertexSet& x, const ExpanderParams& params);

/// Searches for a set violating expansion. `holds == false` always carries
/// a witness; a sampled run that finds nothing is evidence, not proof.
ExpansionReport verify_expander(const Graph& g, const ExpanderParams& params,
                                const ExpansionBudget& budget = {});

struct ExpanderExtraction {
  Subgraph subgraph;
  ExpanderParams params;
  ExpansionReport report;
  int iterations = 0;
};

/// Expander subgraph H with d(H) >= d(G)/2 and delta(H) >= d(H)/2.
///
/// Alternates trimming vertices of degree below half the current average
/// with splitting along any expansion-violating set found, keeping the side
/// of larger average degree. A split is only taken when that side still has
/// average degree at least d(G)/2, so both degree bounds hold on return.
/// The expansion property itself is as strong as the final report says.
/// Throws std::invalid_argument on an edgeless graph.
ExpanderExtraction extract_expander(const Graph& g, const ExpanderParams& params,
                                    const ExpansionBudget& budget = {});
/// Convenience form with k = epsilon2 * d(G).
ExpanderExtraction extract_expander(const Graph& g, double epsilon2, double epsilon1 = 0.5,
                                    const ExpansionBudget& budget = {});

/// Two-coloring by deterministic local search: vertices are placed in id
/// order on the side with more crossing edges, then single-vertex moves are
/// applied while they enlarge the cut. Every vertex ends with at least half
/// of its neighbors across.
Bipartition greedy_max_cut(const Graph& g);

struct BipartiteExpanderExtraction {
  Subgraph subgraph;
  ExpanderParams params;
  ExpansionReport report;
  std::vector<std::string> warnings;
};

/// Bipartite expander subgraph with minimum degree at least d. Requires
/// d(G) >= 2d (the full-strength hypothesis is d(G) >= 8d; falling short of
/// it only adds a warning). Reports Insufficient when trimming to minimum
/// degree d empties the graph.
Outcome<BipartiteExpanderExtraction> extract_bipartite_expander(
    const Graph& g, double d, double epsilon2, double epsilon1 = 0.5,
    const ExpansionBudget& budget = {});

}  // namespace tksub
