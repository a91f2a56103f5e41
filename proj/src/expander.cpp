#include "tksub/expander.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "tksub/kernels.hpp"
#include "tksub/rng.hpp"

namespace tksub {

void ExpanderParams::validate() const {
  if (!(epsilon1 > 0.0 && epsilon1 < 1.0)) throw std::invalid_argument("epsilon1 must lie in (0,1)");
  if (!(k > 0.0)) throw std::invalid_argument("k must be positive");
  if (!(epsilon2 > 0.0 && epsilon2 < 1.0)) throw std::invalid_argument("epsilon2 must lie in (0,1)");
}

double epsilon(double x, const ExpanderParams& params) {
  if (x < params.k / 5.0) return 0.0;
  const double l = std::log(15.0 * x / params.k);
  return params.epsilon1 / (l * l);
}

const char* mode_name(CheckMode m) { return m == CheckMode::Exact ? "exact" : "sampled"; }

std::pair<int, int> expansion_size_range(std::size_t n, const ExpanderParams& params) {
  const int lo = std::max(1, static_cast<int>(std::ceil(params.k / 2.0)));
  const int hi = static_cast<int>(n / 2);
  return {lo, hi};
}

namespace {

std::vector<double> limit_table(std::size_t n, const ExpanderParams& params) {
  std::vector<double> limit(n + 1, 0.0);
  for (std::size_t x = 1; x <= n; ++x)
    limit[x] = epsilon(static_cast<double>(x), params) * static_cast<double>(x);
  return limit;
}

class ViolationSearch {
 public:
  ViolationSearch(const Graph& g, int lo, int hi, std::span<const double> limit)
      : g_(g), lo_(lo), hi_(hi), limit_(limit), mask_(g.size()) {}

  bool check(const std::vector<Vertex>& members) {
    const int size = static_cast<int>(members.size());
    if (size < lo_ || size > hi_) return false;
    ++checked_;
    for (Vertex v : members) mask_.insert(v);
    const int boundary = kernels::boundary_size(g_, mask_, members);
    for (Vertex v : members) mask_.erase(v);
    if (static_cast<double>(boundary) < limit_[static_cast<std::size_t>(size)]) {
      witness_ = make_set(members);
      return true;
    }
    return false;
  }

  // Every connected set up to `max_size` whose smallest vertex is the seed,
  // each generated once (exclusive-neighborhood extension). Returns false if
  // the subset budget ran out first.
  bool enumerate_connected(int max_size, std::uint64_t budget) {
    const Vertex n = static_cast<Vertex>(g_.size());
    std::vector<Vertex> sub;
    std::vector<std::uint8_t> in_sub(g_.size(), 0);
    std::vector<int> near(g_.size(), 0);  // # of sub members adjacent or equal
    std::uint64_t visited = 0;
    bool exhausted = false;

    std::function<bool(Vertex, std::vector<Vertex>)> extend =
        [&](Vertex seed, std::vector<Vertex> ext) -> bool {
      if (++visited > budget) {
        exhausted = true;
        return true;
      }
      if (check(sub)) return true;
      if (static_cast<int>(sub.size()) == max_size) return false;
      while (!ext.empty()) {
        const Vertex w = ext.back();
        ext.pop_back();
        std::vector<Vertex> next = ext;
        for (Vertex u : g_.neighbors(w))
          if (u > seed && !in_sub[static_cast<std::size_t>(u)] && near[static_cast<std::size_t>(u)] == 0 &&
              std::find(ext.begin(), ext.end(), u) == ext.end())
            next.push_back(u);
        sub.push_back(w);
        in_sub[static_cast<std::size_t>(w)] = 1;
        for (Vertex u : g_.neighbors(w)) ++near[static_cast<std::size_t>(u)];
        ++near[static_cast<std::size_t>(w)];
        const bool stop = extend(seed, std::move(next));
        --near[static_cast<std::size_t>(w)];
        for (Vertex u : g_.neighbors(w)) --near[static_cast<std::size_t>(u)];
        in_sub[static_cast<std::size_t>(w)] = 0;
        sub.pop_back();
        if (stop) return true;
      }
      return false;
    };

    for (Vertex v = 0; v < n; ++v) {
      sub = {v};
      in_sub[static_cast<std::size_t>(v)] = 1;
      for (Vertex u : g_.neighbors(v)) ++near[static_cast<std::size_t>(u)];
      ++near[static_cast<std::size_t>(v)];
      std::vector<Vertex> ext;
      for (Vertex u : g_.neighbors(v))
        if (u > v) ext.push_back(u);
      const bool stop = extend(v, std::move(ext));
      --near[static_cast<std::size_t>(v)];
      for (Vertex u : g_.neighbors(v)) --near[static_cast<std::size_t>(u)];
      in_sub[static_cast<std::size_t>(v)] = 0;
      if (stop) return !exhausted;
    }
    return true;
  }

  void components() {
    const auto comp = tksub::components(g_);
    std::vector<std::vector<Vertex>> groups(g_.size());
    for (std::size_t v = 0; v < comp.size(); ++v) groups[static_cast<std::size_t>(comp[v])].push_back(static_cast<Vertex>(v));
    std::vector<std::vector<Vertex>> list;
    for (auto& grp : groups)
      if (!grp.empty()) list.push_back(std::move(grp));
    if (list.size() < 2) return;
    for (const auto& c : list)
      if (check(c)) return;
    // Unions of the smallest components are also closed sets.
    std::stable_sort(list.begin(), list.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<Vertex> acc;
    for (const auto& c : list) {
      acc.insert(acc.end(), c.begin(), c.end());
      if (static_cast<int>(acc.size()) > hi_) break;
      if (check(acc)) return;
    }
  }

  void random_sets(int samples, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t n = g_.size();
    if (n == 0 || lo_ > hi_) return;
    std::vector<std::uint8_t> in(n, 0);
    for (int s = 0; s < samples; ++s) {
      const int target = lo_ + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi_ - lo_ + 1)));
      std::vector<Vertex> members;
      if (s % 2 == 0) {
        // Random connected growth from a random seed.
        Vertex start = static_cast<Vertex>(rng.below(n));
        members.push_back(start);
        in[static_cast<std::size_t>(start)] = 1;
        std::vector<Vertex> frontier(g_.neighbors(start).begin(), g_.neighbors(start).end());
        while (static_cast<int>(members.size()) < target && !frontier.empty()) {
          const std::size_t pick = rng.below(frontier.size());
          const Vertex w = frontier[pick];
          frontier[pick] = frontier.back();
          frontier.pop_back();
          if (in[static_cast<std::size_t>(w)]) continue;
          in[static_cast<std::size_t>(w)] = 1;
          members.push_back(w);
          for (Vertex u : g_.neighbors(w))
            if (!in[static_cast<std::size_t>(u)]) frontier.push_back(u);
        }
      } else {
        while (static_cast<int>(members.size()) < target) {
          const Vertex w = static_cast<Vertex>(rng.below(n));
          if (in[static_cast<std::size_t>(w)]) continue;
          in[static_cast<std::size_t>(w)] = 1;
          members.push_back(w);
        }
      }
      for (Vertex v : members) in[static_cast<std::size_t>(v)] = 0;
      if (check(members)) return;
    }
  }

  void add_checked(std::uint64_t c) { checked_ += c; }
  void set_witness(VertexSet w) { witness_ = std::move(w); }
  std::uint64_t checked() const { return checked_; }
  const std::optional<VertexSet>& witness() const { return witness_; }

 private:
  const Graph& g_;
  int lo_;
  int hi_;
  std::span<const double> limit_;
  VertexMask mask_;
  std::uint64_t checked_ = 0;
  std::optional<VertexSet> witness_;
};

}  // namespace

bool violates_expansion(const Graph& g, const VertexSet& x, const ExpanderParams& params) {
  const auto [lo, hi] = expansion_size_range(g.size(), params);
  const int size = static_cast<int>(x.size());
  if (size < lo || size > hi) return false;
  const VertexMask mask(g.size(), x);
  const int boundary = kernels::boundary_size(g, mask, x);
  return static_cast<double>(boundary) < epsilon(size, params) * size;
}

ExpansionReport verify_expander(const Graph& g, const ExpanderParams& params,
                                const ExpansionBudget& budget) {
  params.validate();
  const auto [lo, hi] = expansion_size_range(g.size(), params);
  const auto limit = limit_table(g.size(), params);
  ExpansionReport report;
  if (lo > hi) {
    report.mode = CheckMode::Exact;
    report.exhaustive = true;
    return report;
  }

  const int cap = std::min(budget.exhaustive_cap, 30);
  if (static_cast<int>(g.size()) <= cap) {
    std::vector<std::uint32_t> nbr(g.size(), 0);
    for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
      for (Vertex w : g.neighbors(v)) nbr[static_cast<std::size_t>(v)] |= std::uint32_t{1} << w;
    const auto scan = kernels::scan_subsets(nbr, lo, hi, limit);
    report.mode = CheckMode::Exact;
    report.exhaustive = true;
    report.subsets_checked = scan.checked;
    if (scan.violation) {
      VertexSet x;
      for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
        if (*scan.violation >> v & 1u) x.push_back(v);
      report.holds = false;
      report.witness = std::move(x);
    }
    return report;
  }

  ViolationSearch search(g, lo, hi, limit);
  auto finish = [&](CheckMode mode) {
    report.mode = mode;
    report.subsets_checked = search.checked();
    if (search.witness()) {
      report.holds = false;
      report.witness = search.witness();
    }
    return report;
  };

  search.components();
  if (search.witness()) return finish(budget.mode);

  std::vector<Vertex> roots;
  const std::size_t n = g.size();
  const std::size_t want = static_cast<std::size_t>(std::max(1, budget.max_ball_roots));
  if (n <= want) {
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) roots.push_back(v);
  } else {
    for (std::size_t i = 0; i < want; ++i) roots.push_back(static_cast<Vertex>(i * n / want));
  }
  const auto balls = kernels::scan_balls(g, roots, lo, hi, limit);
  search.add_checked(balls.checked);
  if (balls.violation) {
    search.set_witness(*balls.violation);
    return finish(budget.mode);
  }

  bool complete = false;
  if (budget.mode == CheckMode::Exact) {
    complete = search.enumerate_connected(std::min(budget.subset_size_cap, hi), budget.max_subsets);
    if (search.witness()) return finish(CheckMode::Exact);
  }
  search.random_sets(budget.samples, budget.seed);
  return finish(budget.mode == CheckMode::Exact && complete ? CheckMode::Exact : CheckMode::Sampled);
}

namespace {

// Removes vertices of degree below half the running average until none
// remain. A batch like that never lowers the average.
VertexSet trim_low_degree(const Graph& g, VertexSet keep) {
  VertexMask in(g.size(), keep);
  while (true) {
    std::vector<int> deg;
    std::int64_t twice = 0;
    for (Vertex v : keep) {
      int d = 0;
      for (Vertex w : g.neighbors(v))
        if (in.contains(w)) ++d;
      deg.push_back(d);
      twice += d;
    }
    const auto n = static_cast<std::int64_t>(keep.size());
    VertexSet next;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      if (2 * n * deg[i] < twice)
        in.erase(keep[i]);
      else
        next.push_back(keep[i]);
    }
    if (next.size() == keep.size()) return keep;
    keep = std::move(next);
  }
}

DegreeStats induced_stats(const Graph& g, const VertexSet& s) {
  return degree_stats(induced_subgraph(g, s).graph);
}

}  // namespace

ExpanderExtraction extract_expander(const Graph& g, const ExpanderParams& params,
                                    const ExpansionBudget& budget) {
  params.validate();
  if (g.edge_count() == 0) throw std::invalid_argument("extract_expander: graph has no edges");
  const DegreeStats whole = degree_stats(g);
  VertexSet cur;
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) cur.push_back(v);

  ExpanderExtraction out;
  out.params = params;
  const int max_iterations = 4 * static_cast<int>(g.size());
  for (int iter = 0;; ++iter) {
    cur = trim_low_degree(g, std::move(cur));
    out.subgraph = induced_subgraph(g, cur);
    out.iterations = iter + 1;
    ExpansionBudget b = budget;
    b.seed = budget.seed + static_cast<std::uint64_t>(iter);
    out.report = verify_expander(out.subgraph.graph, params, b);
    if (out.report.holds || iter + 1 >= max_iterations) break;

    const VertexSet& x = *out.report.witness;
    VertexSet all;
    for (Vertex v = 0; v < static_cast<Vertex>(out.subgraph.graph.size()); ++v) all.push_back(v);
    const VertexSet rest = set_difference(all, x);
    const DegreeStats sx = induced_stats(out.subgraph.graph, x);
    const DegreeStats sr = induced_stats(out.subgraph.graph, rest);
    const bool x_wins = average_at_least(sx, sr, 1, 1) &&
                        (!average_at_least(sr, sx, 1, 1) || x.front() < rest.front());
    const VertexSet& side = x_wins ? x : rest;
    const DegreeStats& ss = x_wins ? sx : sr;
    if (ss.twice_edges == 0 || !average_at_least(ss, whole, 1, 2)) break;
    cur = out.subgraph.lift(side);
  }
  return out;
}

ExpanderExtraction extract_expander(const Graph& g, double epsilon2, double epsilon1,
                                    const ExpansionBudget& budget) {
  if (g.edge_count() == 0) throw std::invalid_argument("extract_expander: graph has no edges");
  ExpanderParams params{epsilon1, epsilon2 * degree_stats(g).average(), epsilon2};
  return extract_expander(g, params, budget);
}

Bipartition greedy_max_cut(const Graph& g) {
  const std::size_t n = g.size();
  Bipartition side(n, -1);
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    int on0 = 0;
    int on1 = 0;
    for (Vertex w : g.neighbors(v)) {
      if (side[static_cast<std::size_t>(w)] == 0) ++on0;
      if (side[static_cast<std::size_t>(w)] == 1) ++on1;
    }
    side[static_cast<std::size_t>(v)] = on1 >= on0 ? 0 : 1;
  }
  for (bool moved = true; moved;) {
    moved = false;
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
      int same = 0;
      for (Vertex w : g.neighbors(v))
        if (side[static_cast<std::size_t>(w)] == side[static_cast<std::size_t>(v)]) ++same;
      if (2 * same > g.degree(v)) {
        side[static_cast<std::size_t>(v)] = static_cast<std::int8_t>(1 - side[static_cast<std::size_t>(v)]);
        moved = true;
      }
    }
  }
  return side;
}

namespace {

VertexSet min_degree_core(const Graph& g, int d) {
  std::vector<int> deg(g.size());
  VertexMask gone(g.size());
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) {
    deg[static_cast<std::size_t>(v)] = g.degree(v);
    if (deg[static_cast<std::size_t>(v)] < d) {
      gone.insert(v);
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v))
      if (!gone.contains(w) && --deg[static_cast<std::size_t>(w)] < d) {
        gone.insert(w);
        stack.push_back(w);
      }
  }
  VertexSet keep;
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
    if (!gone.contains(v)) keep.push_back(v);
  return keep;
}

}  // namespace

Outcome<BipartiteExpanderExtraction> extract_bipartite_expander(const Graph& g, double d,
                                                                double epsilon2, double epsilon1,
                                                                const ExpansionBudget& budget) {
  using Result = Outcome<BipartiteExpanderExtraction>;
  if (!(d > 0.0)) throw std::invalid_argument("extract_bipartite_expander: d must be positive");
  const DegreeStats stats = degree_stats(g);
  if (stats.average() < 2.0 * d)
    return Result::failure(Status::PreconditionUnmet,
                           "average degree " + std::to_string(stats.average()) + " is below 2d = " +
                               std::to_string(2.0 * d));
  BipartiteExpanderExtraction out;
  if (stats.average() < 8.0 * d)
    out.warnings.push_back("average degree " + std::to_string(stats.average()) +
                           " is below 8d; running with the relaxed d(G) >= 2d hypothesis");

  const auto exact = bipartition(g);
  const Bipartition sides = exact ? *exact : greedy_max_cut(g);
  const Graph crossing = filter_edges(g, [&](Vertex u, Vertex v) {
    return sides[static_cast<std::size_t>(u)] != sides[static_cast<std::size_t>(v)];
  });
  if (crossing.edge_count() == 0) return Result::failure(Status::Insufficient, "no crossing edges");

  const int need = static_cast<int>(std::ceil(d - 1e-9));
  out.params = ExpanderParams{epsilon1, epsilon2 * d, epsilon2};

  // Parent ids of the current working graph.
  Subgraph cur{crossing, {}};
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) cur.to_parent.push_back(v);
  for (std::size_t round = 0; round <= g.size(); ++round) {
    if (cur.graph.edge_count() == 0)
      return Result::failure(Status::Insufficient, "minimum degree " + std::to_string(need) +
                                                       " unreachable: graph emptied");
    auto ext = extract_expander(cur.graph, out.params, budget);
    const VertexSet core = min_degree_core(ext.subgraph.graph, need);
    if (core.empty())
      return Result::failure(Status::Insufficient,
                             "minimum degree " + std::to_string(need) + " unreachable after extraction (best " +
                                 std::to_string(degree_stats(ext.subgraph.graph).minimum) + ")");
    Subgraph next = induced_subgraph(ext.subgraph.graph, core);
    for (auto& v : next.to_parent) v = cur.to_parent[static_cast<std::size_t>(ext.subgraph.parent(v))];
    const bool stable = core.size() == ext.subgraph.graph.size();
    cur = std::move(next);
    if (stable) {
      out.report = ext.report;
      break;
    }
  }
  out.report = verify_expander(cur.graph, out.params, budget);
  out.subgraph = std::move(cur);
  return Result::success(std::move(out));
}

}  // namespace tksub
