#include "tksub/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include <omp.h>

#include "tksub/rng.hpp"

namespace tksub {

namespace {

struct FamilyInfo {
  Family family;
  const char* name;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::CompleteBipartiteUnion, "complete_bipartite_union"},
    {Family::Complete, "complete"},
    {Family::Hypercube, "hypercube"},
    {Family::Cycle, "cycle"},
    {Family::RandomBipartite, "random_bipartite"},
    {Family::RandomRegular, "random_regular"},
    {Family::RandomBipartiteRegular, "random_bipartite_regular"},
    {Family::PathGraph, "path"},
    {Family::Star, "star"},
    {Family::Petersen, "petersen"},
};

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Pairing model: points are matched at random, pairs that would form a loop
// or a repeated edge are redrawn, and the whole matching restarts when the
// remaining points admit no valid pair. `side` splits points into two
// classes that may only be matched across (bipartite case) when non-empty.
std::vector<Edge> random_pairing(int vertices, int d, const std::vector<int>& side, Rng& rng) {
  for (int restart = 0; restart < 10'000; ++restart) {
    std::vector<Vertex> points;
    for (Vertex v = 0; v < vertices; ++v)
      for (int i = 0; i < d; ++i) points.push_back(v);
    std::set<Edge> edges;
    auto valid = [&](Vertex a, Vertex b) {
      if (a == b) return false;
      if (!side.empty() && side[static_cast<std::size_t>(a)] == side[static_cast<std::size_t>(b)]) return false;
      return !edges.count({std::min(a, b), std::max(a, b)});
    };
    bool stuck = false;
    while (!points.empty() && !stuck) {
      bool placed = false;
      for (int tries = 0; tries < 64 && !placed; ++tries) {
        const auto i = rng.below(points.size());
        const auto j = rng.below(points.size());
        if (i == j || !valid(points[i], points[j])) continue;
        edges.insert({std::min(points[i], points[j]), std::max(points[i], points[j])});
        for (auto idx : {std::max(i, j), std::min(i, j)}) {
          points[idx] = points.back();
          points.pop_back();
        }
        placed = true;
      }
      if (placed) continue;
      // Exhaustive look before giving up on this matching.
      std::vector<std::pair<std::size_t, std::size_t>> options;
      for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
          if (valid(points[i], points[j])) options.emplace_back(i, j);
      if (options.empty()) {
        stuck = true;
        break;
      }
      const auto [i, j] = options[rng.below(options.size())];
      edges.insert({std::min(points[i], points[j]), std::max(points[i], points[j])});
      points[j] = points.back();
      points.pop_back();
      points[i] = points.back();
      points.pop_back();
    }
    if (!stuck) return {edges.begin(), edges.end()};
  }
  throw std::runtime_error("random regular generation did not converge");
}

}  // namespace

const char* family_name(Family f) {
  for (const auto& info : kFamilies)
    if (info.family == f) return info.name;
  return "?";
}

Family parse_family(const std::string& name) {
  for (const auto& info : kFamilies)
    if (name == info.name) return info.family;
  throw std::invalid_argument("unknown family '" + name + "'");
}

std::string GeneratorSpec::label() const {
  std::string s = family_name(family);
  switch (family) {
    case Family::CompleteBipartiteUnion:
      return s + "(d=" + std::to_string(d) + ",copies=" + std::to_string(copies) + ")";
    case Family::Hypercube:
      return s + "(" + std::to_string(d) + ")";
    case Family::RandomBipartite: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", p);
      return s + "(n=" + std::to_string(n) + ",p=" + buf + ",seed=" + std::to_string(seed) + ")";
    }
    case Family::RandomRegular:
    case Family::RandomBipartiteRegular:
      return s + "(n=" + std::to_string(n) + ",d=" + std::to_string(d) + ",seed=" + std::to_string(seed) + ")";
    case Family::Petersen:
      return s;
    default:
      return s + "(" + std::to_string(n) + ")";
  }
}

Graph generate(const GeneratorSpec& spec) {
  std::vector<Edge> edges;
  Rng rng(spec.seed);
  switch (spec.family) {
    case Family::CompleteBipartiteUnion: {
      require(spec.d >= 1 && spec.copies >= 1, "complete_bipartite_union needs d >= 1 and copies >= 1");
      const int block = 2 * spec.d;
      for (int c = 0; c < spec.copies; ++c)
        for (int i = 0; i < spec.d; ++i)
          for (int j = 0; j < spec.d; ++j) edges.emplace_back(c * block + i, c * block + spec.d + j);
      return Graph::from_edges(static_cast<std::size_t>(block * spec.copies), edges);
    }
    case Family::Complete:
      require(spec.n >= 1, "complete needs n >= 1");
      for (int i = 0; i < spec.n; ++i)
        for (int j = i + 1; j < spec.n; ++j) edges.emplace_back(i, j);
      return Graph::from_edges(static_cast<std::size_t>(spec.n), edges);
    case Family::Hypercube: {
      require(spec.d >= 0 && spec.d <= 20, "hypercube dimension must lie in [0, 20]");
      const int n = 1 << spec.d;
      for (int v = 0; v < n; ++v)
        for (int b = 0; b < spec.d; ++b)
          if (!(v >> b & 1)) edges.emplace_back(v, v | 1 << b);
      return Graph::from_edges(static_cast<std::size_t>(n), edges);
    }
    case Family::Cycle:
      require(spec.n >= 3, "cycle needs n >= 3");
      for (int i = 0; i < spec.n; ++i) edges.emplace_back(i, (i + 1) % spec.n);
      return Graph::from_edges(static_cast<std::size_t>(spec.n), edges);
    case Family::PathGraph:
      require(spec.n >= 1, "path needs n >= 1");
      for (int i = 0; i + 1 < spec.n; ++i) edges.emplace_back(i, i + 1);
      return Graph::from_edges(static_cast<std::size_t>(spec.n), edges);
    case Family::Star:
      require(spec.n >= 0, "star needs n >= 0 leaves");
      for (int i = 1; i <= spec.n; ++i) edges.emplace_back(0, i);
      return Graph::from_edges(static_cast<std::size_t>(spec.n + 1), edges);
    case Family::Petersen:
      for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);
        edges.emplace_back(i, i + 5);
      }
      return Graph::from_edges(10, edges);
    case Family::RandomBipartite:
      require(spec.n >= 1 && spec.p >= 0 && spec.p <= 1, "random_bipartite needs n >= 1 and p in [0,1]");
      for (int i = 0; i < spec.n; ++i)
        for (int j = 0; j < spec.n; ++j)
          if (rng.unit() < spec.p) edges.emplace_back(i, spec.n + j);
      return Graph::from_edges(static_cast<std::size_t>(2 * spec.n), edges);
    case Family::RandomRegular: {
      require(spec.n >= 1 && spec.d >= 0 && spec.d < spec.n, "random_regular needs 0 <= d < n");
      require(static_cast<long long>(spec.n) * spec.d % 2 == 0, "random_regular needs n*d even");
      edges = random_pairing(spec.n, spec.d, {}, rng);
      return Graph::from_edges(static_cast<std::size_t>(spec.n), edges);
    }
    case Family::RandomBipartiteRegular: {
      require(spec.n >= 1 && spec.d >= 0 && spec.d <= spec.n, "random_bipartite_regular needs 0 <= d <= n");
      std::vector<int> side(static_cast<std::size_t>(2 * spec.n), 0);
      for (int i = spec.n; i < 2 * spec.n; ++i) side[static_cast<std::size_t>(i)] = 1;
      edges = random_pairing(2 * spec.n, spec.d, side, rng);
      return Graph::from_edges(static_cast<std::size_t>(2 * spec.n), edges);
    }
  }
  throw std::invalid_argument("unknown family");
}

BenchTable bench_scaling(const std::vector<GeneratorSpec>& sweep, const BuildConfig& cfg, const BenchOptions& opts) {
  BenchTable table;
  table.rows.resize(sweep.size());
  const int count = static_cast<int>(sweep.size());
  const int workers = opts.workers > 0 ? opts.workers : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (int i = 0; i < count; ++i) {
    BenchRow& row = table.rows[static_cast<std::size_t>(i)];
    row.spec = sweep[static_cast<std::size_t>(i)];
    try {
      const Graph g = generate(row.spec);
      const DegreeStats st = degree_stats(g);
      row.n = g.size();
      row.m = g.edge_count();
      row.d = st.average();
      const auto start = std::chrono::steady_clock::now();
      BuildConfig row_cfg = cfg;
      if (cfg.target_k == 0 && opts.target_above_sqrt)
        row_cfg.target_k = static_cast<int>(std::ceil(std::sqrt(2.0 * std::max(1.0, row.d)))) + 2;
      const AutoResult res = build_auto(g, row_cfg);
      row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      row.cert = res.cert;
      row.k = res.cert.k();
      row.ell = res.cert.ell;
      row.branch = res.branch;
      row.fallback = res.fallback;
      row.verified = static_cast<bool>(verify_subdivision(g, res.cert));
      if (opts.cert_dir && row.k >= 2) {
        const auto file = *opts.cert_dir / ("row" + std::to_string(i) + ".tkc");
        save_certificate(file, res.cert);
        row.verified = row.verified && static_cast<bool>(verify_subdivision(g, load_certificate(file)));
      }
    } catch (const std::exception& e) {
      row.error = e.what();
      row.fallback = true;
    }
  }

  // Soft check: k should not drop as d grows within one family.
  std::map<Family, const BenchRow*> last;
  for (const auto& row : table.rows) {
    if (!row.error.empty()) continue;
    auto it = last.find(row.spec.family);
    if (it != last.end() && row.d > it->second->d && row.k < it->second->k)
      table.warnings.push_back("k decreased from " + std::to_string(it->second->k) + " to " + std::to_string(row.k) +
                               " at " + row.spec.label());
    if (it == last.end() || row.d >= it->second->d) last[row.spec.family] = &row;
  }
  return table;
}

void write_bench_table(std::ostream& out, const BenchTable& table, double c) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-36s %6s %7s %8s %7s %7s %4s %4s %-8s %10s %s\n", "graph", "n", "m", "d", "sqrt(d)",
                "d^c", "k", "ell", "branch", "ms", "status");
  out << buf;
  for (const auto& r : table.rows) {
    std::string status = r.error.empty() ? (r.verified ? "verified" : "INVALID") : "error: " + r.error;
    if (r.fallback && r.error.empty()) status += ",fallback";
    std::snprintf(buf, sizeof buf, "%-36s %6zu %7zu %8.2f %7.2f %7.2f %4d %4d %-8s %10.1f %s\n",
                  r.spec.label().c_str(), r.n, r.m, r.d, std::sqrt(r.d), std::pow(r.d, c), r.k, r.ell,
                  r.branch.c_str(), r.ms, status.c_str());
    out << buf;
  }
  for (const auto& w : table.warnings) out << "warning: " << w << "\n";
}

void write_bench_results(std::ostream& out, const BenchTable& table, bool deterministic) {
  char buf[256];
  for (const auto& r : table.rows) {
    std::snprintf(buf, sizeof buf, "row n=%zu m=%zu d=%.4f k=%d ell=%d branch=%s ms=%.1f", r.n, r.m, r.d, r.k, r.ell,
                  r.branch.empty() ? "none" : r.branch.c_str(), deterministic ? 0.0 : r.ms);
    out << buf;
    if (r.fallback) out << " fallback=1";
    if (!r.error.empty()) out << " error=1";
    out << "\n";
  }
}

}  // namespace tksub
