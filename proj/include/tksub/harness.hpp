#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tksub/builder.hpp"
#include "tksub/graph.hpp"

namespace tksub {

enum class Family {
  CompleteBipartiteUnion,  // copies x K_{d,d}
  Complete,                // K_n
  Hypercube,               // Q_d
  Cycle,                   // C_n
  RandomBipartite,         // n + n vertices, each cross edge with probability p
  RandomRegular,           // n vertices, d-regular (pairing model)
  RandomBipartiteRegular,  // n + n vertices, d-regular bipartite
  PathGraph,               // P_n
  Star,                    // K_{1,n}
  Petersen,
};

const char* family_name(Family f);
/// Throws std::invalid_argument on an unknown name.
Family parse_family(const std::string& name);

/// Parameter use per family: n (order or side size), d (degree, dimension
/// or side size), copies, p (edge probability). Unused fields are ignored.
struct GeneratorSpec {
  Family family = Family::Cycle;
  int n = 0;
  int d = 0;
  int copies = 1;
  double p = 0.5;
  std::uint64_t seed = 1;

  std::string label() const;
};

/// Deterministic for a fixed spec. Throws std::invalid_argument on
/// parameters the family cannot realize.
Graph generate(const GeneratorSpec& spec);

struct BenchRow {
  GeneratorSpec spec;
  std::size_t n = 0;
  std::size_t m = 0;
  double d = 0;
  int k = 0;
  int ell = 0;
  std::string branch;
  double ms = 0;
  bool verified = false;
  bool fallback = false;
  std::string error;  // empty unless the row failed
  SubdivisionCertificate cert;
};

struct BenchOptions {
  int workers = 0;  // 0: OpenMP default
  /// When set, every certificate with k >= 2 is saved here and re-verified
  /// from disk.
  std::optional<std::filesystem::path> cert_dir;
  /// With cfg.target_k == 0, aim each row at ceil(sqrt(2d)) + 2 cores, just
  /// above what K_{d,d} admits at ell = 2, instead of the preset count.
  bool target_above_sqrt = true;
};

struct BenchTable {
  std::vector<BenchRow> rows;
  std::vector<std::string> warnings;  // soft monotonicity notes
};

/// Runs build_auto on every spec (rows in parallel, output in sweep order).
/// A row that throws is recorded with its error and the run continues.
BenchTable bench_scaling(const std::vector<GeneratorSpec>& sweep, const BuildConfig& cfg,
                         const BenchOptions& opts = {});

/// Aligned table including the sqrt(d) and d^c reference columns.
void write_bench_table(std::ostream& out, const BenchTable& table, double c);
/// One "row n= m= d= k= ell= branch= ms=" line per row.
void write_bench_results(std::ostream& out, const BenchTable& table, bool deterministic);

}  // namespace tksub
