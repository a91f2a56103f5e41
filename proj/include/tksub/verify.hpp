#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "tksub/graph.hpp"

namespace tksub {

/// A TK^(ell)_k witness. paths[{i, j}] (i < j, indices into cores) runs from
/// cores[i] to cores[j].
struct SubdivisionCertificate {
  std::vector<Vertex> cores;
  std::map<std::pair<int, int>, Path> paths;
  int ell = 0;

  int k() const { return static_cast<int>(cores.size()); }
  /// Vertex ids replaced through `to_parent` (for certificates found in a subgraph).
  SubdivisionCertificate lifted(const std::vector<Vertex>& to_parent) const;
};

/// Checks, in order, over all pairs: (a) k distinct valid cores and every
/// pair present, nothing else; (b) endpoints are the pair's cores;
/// (c) every path edge is in g; (d) every length equals ell; (e) paths are
/// simple, interiors pairwise disjoint and free of cores. The failing clause
/// is "a".."e"; the reason names the pair.
Verdict verify_subdivision(const Graph& g, const SubdivisionCertificate& cert);

/// Text form: "tkcert k=<k> ell=<ell>", "cores: ...", then one
/// "path <i> <j>: <v0> ... <vell>" line per pair. Reading throws
/// std::runtime_error with a line number on malformed input.
void write_certificate(std::ostream& out, const SubdivisionCertificate& cert);
SubdivisionCertificate read_certificate(std::istream& in);
void save_certificate(const std::filesystem::path& file, const SubdivisionCertificate& cert);
SubdivisionCertificate load_certificate(const std::filesystem::path& file);

struct OracleLimits {
  int max_vertices = 14;
  std::uint64_t max_nodes = 200'000'000;
};

struct OracleResult {
  int best_k = 0;
  int best_ell = 0;
  SubdivisionCertificate witness;
  std::uint64_t nodes_explored = 0;
  Status status = Status::Ok;  // BudgetExceeded: best_k is only a lower bound
};

/// Largest k such that some TK^(ell)_k with 1 <= ell <= max_ell is a
/// subgraph of g; ties go to the smallest ell. k = 2 is always reached on a
/// graph with an edge (ell = 1); an edgeless graph gives k = min(n, 1).
/// Throws std::invalid_argument when g exceeds limits.max_vertices.
OracleResult oracle_max_subdivision(const Graph& g, int max_ell, const OracleLimits& limits = {});

/// Same search for one fixed ell (best_k may be 1 when no pair of vertices
/// is joined by a path of that length).
OracleResult oracle_max_k_at_ell(const Graph& g, int ell, const OracleLimits& limits = {});

}  // namespace tksub
