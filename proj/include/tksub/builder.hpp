#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tksub/adjuster.hpp"
#include "tksub/expander.hpp"
#include "tksub/verify.hpp"

namespace tksub {

enum class Preset { Desk, Theorem };

const char* preset_name(Preset p);

/// Zero-valued integer fields mean "use the preset value".
struct BuildConfig {
  Preset preset = Preset::Desk;
  double epsilon1 = 0.5;
  double epsilon2 = 0.1;
  int ell = 0;  // 0: preset value (2 under Desk)
  int target_k = 0;
  int m = 0;
  int r1 = 0;
  int r2 = 0;
  double s = 0.0;
  int degree_threshold = 0;
  int expansion_size = 0;
  double c = 0.25;
  double t3 = 0.05;
  double t4 = 0.05;
  std::uint64_t seed = 1;
  int max_steps = 4;
  ConnectConfig connect;
  ExpansionBudget expansion_budget;

  /// Throws std::invalid_argument on negative ell, explicit r1 >= r2, or
  /// out-of-range epsilons.
  void validate() const;
};

/// One resolved parameter: the preset formula value next to the value used.
struct TraceEntry {
  std::string key;
  std::string value;
};

struct BuildResult {
  SubdivisionCertificate cert;
  Status status = Status::Ok;
  std::vector<std::string> diagnostics;
  std::vector<TraceEntry> trace;
};

struct CoreSelection {
  std::vector<Vertex> cores;
  Status status = Status::Ok;  // Insufficient when fewer than count were found
};

/// Greedy scattering: repeatedly takes the smallest id at distance >=
/// min_dist from every chosen vertex (restricted to `side` when given).
CoreSelection select_far_apart_cores(const Graph& g, int count, int min_dist,
                                     std::optional<int> side = std::nullopt);

/// Cores on one side, paths filled greedily pair by pair through
/// connect_exact_length; weakest cores are dropped until every remaining
/// pair is joined. Throws std::invalid_argument if g is not bipartite.
BuildResult build_dense(const Graph& g, const BuildConfig& cfg);

/// As build_dense with cores restricted to degree >= the threshold.
/// PreconditionUnmet when one side has fewer than target_k such vertices.
BuildResult build_sparse_highdeg(const Graph& g, const BuildConfig& cfg);

/// Far-apart cores with inner balls of radius r1; each path starts and ends
/// with consecutive-shortest prefixes inside the balls and otherwise stays
/// away from every ball.
BuildResult build_sparse_bounded(const Graph& g, const BuildConfig& cfg);

struct StripResult {
  Subgraph subgraph;
  VertexSet removed;
  /// delta(H) > delta(G)/3 on what is left.
  bool min_degree_kept = false;
};

/// Deletes every vertex of degree >= threshold.
StripResult strip_high_degree(const Graph& g, int threshold);

struct AutoResult {
  SubdivisionCertificate cert;  // in g's vertex ids; always verified
  std::string branch;
  bool fallback = false;
  std::vector<std::string> diagnostics;
  std::vector<TraceEntry> trace;
};

/// Extraction, then dense / high-degree / bounded-degree dispatch. Never
/// fails: the worst case is a k <= 2 certificate marked as fallback.
AutoResult build_auto(const Graph& g, const BuildConfig& cfg);

void write_trace(std::ostream& out, const std::vector<TraceEntry>& trace);

}  // namespace tksub
