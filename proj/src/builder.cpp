#include "tksub/builder.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tksub {

const char* preset_name(Preset p) { return p == Preset::Desk ? "desk" : "theorem"; }

void BuildConfig::validate() const {
  if (ell < 0) throw std::invalid_argument("ell must be at least 1");
  if (r1 > 0 && r2 > 0 && r1 >= r2) throw std::invalid_argument("r1 must be smaller than r2");
  if (!(epsilon1 > 0 && epsilon1 < 1) || !(epsilon2 > 0 && epsilon2 < 1))
    throw std::invalid_argument("epsilons must lie in (0,1)");
  if (target_k < 0 || m < 0 || r1 < 0 || r2 < 0 || degree_threshold < 0 || expansion_size < 0)
    throw std::invalid_argument("negative size parameter");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be positive");
}

void write_trace(std::ostream& out, const std::vector<TraceEntry>& trace) {
  for (const auto& e : trace) out << e.key << ": " << e.value << "\n";
}

namespace {

std::string num(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

// Parameters after applying the preset. Formula values are recorded next to
// the value actually used.
struct Resolved {
  int ell = 2;
  int target_k = 2;
  int m = 8;
  int r1 = 1;
  int r2 = 2;
  double s = 1.0;
  int delta = 1;
  int expansion = 2;
};

class Tracer {
 public:
  explicit Tracer(std::vector<TraceEntry>& out) : out_(out) {}
  void note(const std::string& key, const std::string& value) { out_.push_back({key, value}); }
  void param(const std::string& key, const std::string& formula, double formula_value, double used) {
    note(key, "formula " + formula + " = " + num(formula_value) + ", used " + num(used));
  }

 private:
  std::vector<TraceEntry>& out_;
};

int clamp_int(double x, int lo, int hi) {
  if (!(x == x)) return lo;
  return static_cast<int>(std::max<double>(lo, std::min<double>(hi, x)));
}

enum class Branch { Dense, HighDeg, Bounded };

// d is the degree scale of the working graph, n its order.
Resolved resolve(const BuildConfig& cfg, double d, std::size_t n_in, Branch branch, Tracer& tr) {
  Resolved r;
  const double n = std::max<double>(3.0, static_cast<double>(n_in));
  const double ln = std::log(n);
  const double lnln = std::max(1.0, std::log(ln));
  const bool desk = cfg.preset == Preset::Desk;
  const int cap = static_cast<int>(std::max<std::size_t>(n_in, 1));

  const double ell_f = 2.0 * std::ceil(std::pow(ln, 7));
  r.ell = cfg.ell > 0 ? cfg.ell : (desk ? 2 : clamp_int(ell_f, 1, 1 << 30));
  tr.param("ell", "2*ceil(ln^7 n)", ell_f, r.ell);

  const double m_f = 800.0 / cfg.epsilon1 * std::pow(ln, 3);
  r.m = cfg.m > 0 ? cfg.m : (desk ? 8 : clamp_int(std::ceil(m_f), 1, cap));
  tr.param("m", "800/eps1*ln^3 n", m_f, r.m);

  const double s_f = 20.0 / (1.0 - 2.0 * cfg.c);
  r.s = cfg.s > 0 ? cfg.s : (desk ? 1.0 : s_f);
  tr.param("s", "20/(1-2c)", s_f, r.s);

  // Desk Delta keeps the c^2 d^2 shape with ln^10 n replaced by 1/c^2.
  const double delta_f = cfg.c * cfg.c * d * d * std::pow(ln, 10);
  const double delta_desk = std::max(1.0, std::ceil(d * d));
  r.delta = cfg.degree_threshold > 0 ? cfg.degree_threshold
                                     : (desk ? clamp_int(delta_desk, 1, 1 << 30) : clamp_int(std::ceil(delta_f), 1, 1 << 30));
  tr.param("degree_threshold", "c^2*d^2*ln^10 n", delta_f, r.delta);

  const double r1_f = std::ceil(std::pow(lnln, 5));
  const double r2_f = std::ceil(ln / (300.0 * r.s * lnln));
  r.r1 = cfg.r1 > 0 ? cfg.r1 : (desk ? 1 : clamp_int(r1_f, 1, cap));
  r.r2 = cfg.r2 > 0 ? cfg.r2 : (desk ? 2 : clamp_int(r2_f, 1, cap));
  if (r.r2 <= r.r1) {
    tr.note("r2", "raised from " + std::to_string(r.r2) + " to r1 + 1");
    r.r2 = r.r1 + 1;
  }
  tr.param("r1", "ceil((ln ln n)^5)", r1_f, r.r1);
  tr.param("r2", "ceil(ln n/(300 s ln ln n))", r2_f, r.r2);

  switch (branch) {
    case Branch::Dense: {
      const double t_f = std::floor(std::sqrt(d) / (2.0 * std::pow(ln, 10)));
      const double t_desk = std::max(2.0, std::floor(std::sqrt(d) / 2.0));
      r.target_k = cfg.target_k > 0 ? cfg.target_k : (desk ? static_cast<int>(t_desk) : std::max(1, clamp_int(t_f, 1, cap)));
      tr.param("target_k", "floor(sqrt(d)/(2 ln^10 n))", t_f, r.target_k);
      const double f_f = d / std::pow(ln, 10);
      r.expansion = cfg.expansion_size > 0 ? cfg.expansion_size : (desk ? 2 : std::max(1, clamp_int(f_f, 1, cap)));
      tr.param("expansion_size", "d/ln^10 n", f_f, r.expansion);
      break;
    }
    case Branch::HighDeg: {
      const double t_f = std::ceil(cfg.t3 * d);
      r.target_k = cfg.target_k > 0 ? cfg.target_k : std::max(2, clamp_int(t_f, 1, cap));
      tr.param("target_k", "ceil(t3*d)", t_f, r.target_k);
      const double f_f = cfg.c * cfg.c / 4.0 * d * d * std::pow(ln, 10);
      const double f_desk = std::max(2.0, std::floor(d * d / 4.0));
      r.expansion = cfg.expansion_size > 0 ? cfg.expansion_size : (desk ? clamp_int(f_desk, 1, cap) : clamp_int(f_f, 1, cap));
      tr.param("expansion_size", "(c^2/4)*d^2*ln^10 n", f_f, r.expansion);
      break;
    }
    case Branch::Bounded: {
      const double t_f = std::ceil(cfg.t4 * d);
      r.target_k = cfg.target_k > 0 ? cfg.target_k : std::max(2, clamp_int(t_f, 1, cap));
      tr.param("target_k", "ceil(t4*d)", t_f, r.target_k);
      r.expansion = cfg.expansion_size > 0 ? cfg.expansion_size : 2;
      tr.note("expansion_size", std::to_string(r.expansion));
      break;
    }
  }
  return r;
}

// Greedy pair filling shared by all three builders: pairs are tried in
// lexicographic order, each up to max_steps variants; after a round with
// missing pairs the weakest core is dropped and its paths released.
class PairFiller {
 public:
  struct Committed {
    int i;
    int j;
    Path path;  // cores[i] -> cores[j]
  };
  using Attempt = std::function<std::optional<Path>(int, int, int)>;
  // Index of the first committed path that must be released, or -1.
  using Audit = std::function<int(const std::vector<Committed>&)>;

  PairFiller(std::vector<Vertex> cores, int max_steps, std::vector<std::string>& diag)
      : cores_(std::move(cores)),
        active_(cores_.size(), true),
        wins_(cores_.size(), 0),
        losses_(cores_.size(), 0),
        max_steps_(max_steps),
        diag_(diag) {}

  const std::vector<Vertex>& cores() const { return cores_; }
  const std::vector<Committed>& committed() const { return committed_; }
  bool active(int i) const { return active_[static_cast<std::size_t>(i)]; }

  void run(const Attempt& attempt, const Audit& audit = {}) {
    while (true) {
      std::vector<std::pair<int, int>> missing;
      for (int i = 0; i < static_cast<int>(cores_.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(cores_.size()); ++j)
          if (active(i) && active(j) && !has(i, j)) missing.emplace_back(i, j);
      if (missing.empty()) return;
      bool any_failed = false;
      for (const auto& [i, j] : missing) {
        std::optional<Path> got;
        for (int v = 0; v < max_steps_ && !got; ++v) got = attempt(i, j, v);
        if (got) {
          committed_.push_back({i, j, std::move(*got)});
          ++wins_[static_cast<std::size_t>(i)];
          ++wins_[static_cast<std::size_t>(j)];
        } else {
          any_failed = true;
          ++losses_[static_cast<std::size_t>(i)];
          ++losses_[static_cast<std::size_t>(j)];
          diag_.push_back("pair (" + std::to_string(cores_[static_cast<std::size_t>(i)]) + "," +
                          std::to_string(cores_[static_cast<std::size_t>(j)]) + ") failed after " +
                          std::to_string(max_steps_) + " attempts");
        }
      }
      if (!any_failed) continue;
      drop_weakest();
      if (audit) {
        for (int bad = audit(committed_); bad >= 0; bad = audit(committed_)) {
          diag_.push_back("released path (" + std::to_string(committed_[static_cast<std::size_t>(bad)].i) + "," +
                          std::to_string(committed_[static_cast<std::size_t>(bad)].j) + ") after a core was dropped");
          committed_.erase(committed_.begin() + bad);
        }
      }
      if (std::count(active_.begin(), active_.end(), true) < 2) return;
    }
  }

  SubdivisionCertificate certificate(int ell) const {
    SubdivisionCertificate cert;
    cert.ell = ell;
    std::vector<int> index(cores_.size(), -1);
    for (std::size_t i = 0; i < cores_.size(); ++i)
      if (active_[i]) {
        index[i] = cert.k();
        cert.cores.push_back(cores_[i]);
      }
    if (cert.k() < 2) cert.ell = cert.k() == 0 ? 0 : ell;
    for (const auto& c : committed_)
      cert.paths.emplace(std::pair{index[static_cast<std::size_t>(c.i)], index[static_cast<std::size_t>(c.j)]}, c.path);
    return cert;
  }

 private:
  bool has(int i, int j) const {
    return std::any_of(committed_.begin(), committed_.end(), [&](const Committed& c) { return c.i == i && c.j == j; });
  }

  // Fewest successes, then most failures, then highest index; only cores
  // that still miss a pair are candidates.
  void drop_weakest() {
    int worst = -1;
    for (int i = 0; i < static_cast<int>(cores_.size()); ++i) {
      if (!active(i)) continue;
      bool misses = false;
      for (int j = 0; j < static_cast<int>(cores_.size()); ++j)
        if (j != i && active(j) && !has(std::min(i, j), std::max(i, j))) misses = true;
      if (!misses) continue;
      if (worst < 0) {
        worst = i;
        continue;
      }
      const auto wi = static_cast<std::size_t>(i);
      const auto ww = static_cast<std::size_t>(worst);
      if (wins_[wi] < wins_[ww] || (wins_[wi] == wins_[ww] && losses_[wi] >= losses_[ww])) worst = i;
    }
    if (worst < 0) return;
    active_[static_cast<std::size_t>(worst)] = false;
    std::erase_if(committed_, [&](const Committed& c) { return c.i == worst || c.j == worst; });
    diag_.push_back("dropped core " + std::to_string(cores_[static_cast<std::size_t>(worst)]));
  }

  std::vector<Vertex> cores_;
  std::vector<bool> active_;
  std::vector<int> wins_;
  std::vector<int> losses_;
  std::vector<Committed> committed_;
  int max_steps_;
  std::vector<std::string>& diag_;
};

void check_or_throw(const Graph& g, const SubdivisionCertificate& cert, const char* who) {
  const auto v = verify_subdivision(g, cert);
  if (!v) throw std::logic_error(std::string(who) + " produced an invalid certificate: clause " + v.clause + ", " + v.reason);
}

// Cores on one side ordered by degree (descending, then id).
std::vector<Vertex> by_degree(const Graph& g, const Bipartition& sides, int side,
                              const std::function<bool(Vertex)>& keep) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
    if (sides[static_cast<std::size_t>(v)] == side && keep(v)) out.push_back(v);
  std::stable_sort(out.begin(), out.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  return out;
}

// Picks t cores: same side for even ell, one per side when t = 2 and ell is
// odd. Empty optional means the parity rules out the request.
std::optional<std::vector<Vertex>> pick_cores(const Graph& g, const Bipartition& sides, int t, int ell,
                                              const std::function<bool(Vertex)>& keep) {
  const auto s0 = by_degree(g, sides, 0, keep);
  const auto s1 = by_degree(g, sides, 1, keep);
  if (ell % 2 == 1) {
    if (t > 2) return std::nullopt;
    std::vector<Vertex> out;
    if (!s0.empty()) out.push_back(s0.front());
    if (t == 2 && !s1.empty()) out.push_back(s1.front());
    return out;
  }
  auto top = [&](const std::vector<Vertex>& s) {
    long long sum = 0;
    for (std::size_t i = 0; i < s.size() && i < static_cast<std::size_t>(t); ++i) sum += g.degree(s[i]);
    return std::pair<std::size_t, long long>{std::min<std::size_t>(s.size(), static_cast<std::size_t>(t)), sum};
  };
  const auto& chosen = top(s1) > top(s0) ? s1 : s0;
  return std::vector<Vertex>(chosen.begin(), chosen.begin() + static_cast<long>(std::min<std::size_t>(chosen.size(), static_cast<std::size_t>(t))));
}

// Attempt used by the dense and high-degree builders.
PairFiller::Attempt neighborhood_attempt(const Graph& g, const PairFiller& filler, const Resolved& r,
                                         const ConnectConfig& connect) {
  return [&g, &filler, r, connect](int i, int j, int variant) -> std::optional<Path> {
    const auto& cores = filler.cores();
    const Vertex ci = cores[static_cast<std::size_t>(i)];
    const Vertex cj = cores[static_cast<std::size_t>(j)];
    std::vector<Vertex> u;
    for (const auto& c : filler.committed())
      for (Vertex v : c.path.interior()) u.push_back(v);
    for (int q = 0; q < static_cast<int>(cores.size()); ++q)
      if (q != i && q != j && filler.active(q)) u.push_back(cores[static_cast<std::size_t>(q)]);
    const VertexSet used = make_set(std::move(u));

    // Variant v skips the first v neighbors of each root, so retries see
    // different expansions.
    auto grow = [&](Vertex root, const VertexSet& extra) {
      VertexSet skip;
      int skipped = 0;
      for (Vertex w : g.neighbors(root)) {
        if (skipped >= variant) break;
        if (!set_contains(used, w) && !set_contains(extra, w)) {
          skip.push_back(w);
          ++skipped;
        }
      }
      const VertexSet avoid = set_union(set_union(used, extra), make_set(skip));
      auto e = grow_expansion(g, root, r.expansion, r.m, avoid);
      return e ? *e.value : Expansion{root, {root}, r.m};
    };
    const Expansion fi = grow(ci, {cj});
    const Expansion fj = grow(cj, set_union(fi.members, make_set({ci})));
    if (!sets_disjoint(fi.members, fj.members)) return std::nullopt;
    const auto p = connect_exact_length(g, fi, fj, r.ell, used, connect);
    if (!p) return std::nullopt;
    Path path = p->front() == ci ? *p.value : p->reversed();
    for (Vertex v : path.interior())
      if (set_contains(used, v)) return std::nullopt;
    return path;
  };
}

BuildResult fill_from(const Graph& g, std::vector<Vertex> cores, const Resolved& r, const BuildConfig& cfg,
                      BuildResult out, const char* who) {
  PairFiller filler(std::move(cores), cfg.max_steps, out.diagnostics);
  filler.run(neighborhood_attempt(g, filler, r, cfg.connect));
  out.cert = filler.certificate(r.ell);
  check_or_throw(g, out.cert, who);
  if (out.cert.k() < r.target_k && out.status == Status::Ok) out.status = Status::Insufficient;
  return out;
}

double degree_scale(const Graph& g) { return std::max(1.0, degree_stats(g).average()); }

}  // namespace

CoreSelection select_far_apart_cores(const Graph& g, int count, int min_dist, std::optional<int> side) {
  CoreSelection out;
  if (count <= 0) return out;
  const auto sides = bipartition(g);
  if (side && !sides) throw std::invalid_argument("select_far_apart_cores: side given for a non-bipartite graph");
  std::vector<int> nearest(g.size(), -1);  // -1 = unreachable from every chosen core
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()) && static_cast<int>(out.cores.size()) < count; ++v) {
    if (side && (*sides)[static_cast<std::size_t>(v)] != *side) continue;
    const int d = nearest[static_cast<std::size_t>(v)];
    if (d != -1 && d < min_dist) continue;
    out.cores.push_back(v);
    const Vertex src[] = {v};
    const auto dist = bfs_distances(g, src);
    for (std::size_t u = 0; u < g.size(); ++u)
      if (dist[u] != kUnreachable && (nearest[u] == -1 || dist[u] < nearest[u])) nearest[u] = dist[u];
  }
  if (static_cast<int>(out.cores.size()) < count) out.status = Status::Insufficient;
  return out;
}

BuildResult build_dense(const Graph& g, const BuildConfig& cfg) {
  cfg.validate();
  const auto sides = bipartition(g);
  if (!sides) throw std::invalid_argument("build_dense: graph is not bipartite");
  BuildResult out;
  Tracer tr(out.trace);
  const Resolved r = resolve(cfg, degree_scale(g), g.size(), Branch::Dense, tr);
  const auto cores = pick_cores(g, *sides, r.target_k, r.ell, [](Vertex) { return true; });
  if (!cores) {
    out.status = Status::ParityMismatch;
    out.diagnostics.push_back("odd ell = " + std::to_string(r.ell) + " cannot join " + std::to_string(r.target_k) +
                              " cores pairwise in a bipartite graph");
    return out;
  }
  return fill_from(g, *cores, r, cfg, std::move(out), "build_dense");
}

BuildResult build_sparse_highdeg(const Graph& g, const BuildConfig& cfg) {
  cfg.validate();
  const auto sides = bipartition(g);
  if (!sides) throw std::invalid_argument("build_sparse_highdeg: graph is not bipartite");
  BuildResult out;
  Tracer tr(out.trace);
  Resolved r = resolve(cfg, degree_scale(g), g.size(), Branch::HighDeg, tr);
  int supply[2] = {0, 0};
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
    if (g.degree(v) >= r.delta) ++supply[(*sides)[static_cast<std::size_t>(v)]];
  const bool enough = r.ell % 2 == 0 ? std::max(supply[0], supply[1]) >= r.target_k
                                     : (r.target_k <= 2 && supply[0] >= 1 && supply[1] >= r.target_k - 1);
  if (!enough) {
    out.status = Status::PreconditionUnmet;
    out.diagnostics.push_back("vertices of degree >= " + std::to_string(r.delta) + ": " + std::to_string(supply[0]) +
                              " on side 0, " + std::to_string(supply[1]) + " on side 1; need " +
                              std::to_string(r.target_k) + " on one side");
    return out;
  }
  const int delta = r.delta;
  const auto cores = pick_cores(g, *sides, r.target_k, r.ell, [&](Vertex v) { return g.degree(v) >= delta; });
  if (!cores) {
    out.status = Status::ParityMismatch;
    out.diagnostics.push_back("odd ell with more than two cores");
    return out;
  }
  int min_deg = g.degree(cores->front());
  for (Vertex c : *cores) min_deg = std::min(min_deg, g.degree(c));
  if (r.expansion > min_deg + 1) {
    tr.note("expansion_size", "capped at core degree + 1 = " + std::to_string(min_deg + 1));
    r.expansion = min_deg + 1;
  }
  return fill_from(g, *cores, r, cfg, std::move(out), "build_sparse_highdeg");
}

namespace {

// The committed family of the bounded-degree builder together with the
// three clauses it must keep.
struct BoundedFamily {
  const Graph& g;
  const std::vector<Vertex>& cores;
  const std::vector<VertexSet>& balls;  // V_q = B^{r1}(v_q)
  int r1;

  PathFan fan(int q, const std::vector<PairFiller::Committed>& family) const {
    PathFan f{cores[static_cast<std::size_t>(q)], balls[static_cast<std::size_t>(q)], {}};
    for (const auto& c : family)
      if (c.i == q || c.j == q) f.paths.push_back(path_prefix(c.path, f.root, r1));
    return f;
  }

  // A1: a path avoids the balls of every core it does not join.
  bool clause_a1(const PairFiller::Committed& c, const std::function<bool(int)>& active) const {
    for (int q = 0; q < static_cast<int>(cores.size()); ++q) {
      if (q == c.i || q == c.j || !active(q)) continue;
      for (Vertex v : c.path.vertices)
        if (set_contains(balls[static_cast<std::size_t>(q)], v)) return false;
    }
    return true;
  }

  // A3 at core q for every path of the family.
  bool clause_a3(int q, const std::vector<PairFiller::Committed>& family) const {
    const Vertex root = cores[static_cast<std::size_t>(q)];
    const PathFan f = fan(q, family);
    VertexMask blocked(g.size());
    for (const Path& p : f.paths)
      for (Vertex v : p.vertices)
        if (v != root) blocked.insert(v);
    const Vertex src[] = {root};
    const auto dist = bfs_distances(g, src, &blocked, r1);
    for (const auto& c : family) {
      VertexSet prefix;
      if (c.i == q || c.j == q) prefix = make_set(path_prefix(c.path, root, r1).vertices);
      for (Vertex v : c.path.vertices)
        if (!set_contains(prefix, v) && dist[static_cast<std::size_t>(v)] != kUnreachable) return false;
    }
    return true;
  }

  bool all_clauses(const std::vector<PairFiller::Committed>& family, const std::function<bool(int)>& active) const {
    for (const auto& c : family)
      if (!clause_a1(c, active)) return false;
    for (int q = 0; q < static_cast<int>(cores.size()); ++q) {
      if (!active(q)) continue;
      if (!check_consecutive_shortest(g, fan(q, family))) return false;
      if (!clause_a3(q, family)) return false;
    }
    return true;
  }
};

}  // namespace

BuildResult build_sparse_bounded(const Graph& g, const BuildConfig& cfg) {
  cfg.validate();
  const auto sides = bipartition(g);
  if (!sides) throw std::invalid_argument("build_sparse_bounded: graph is not bipartite");
  BuildResult out;
  Tracer tr(out.trace);
  const Resolved r = resolve(cfg, degree_scale(g), g.size(), Branch::Bounded, tr);
  const DegreeStats stats = degree_stats(g);
  if (stats.maximum >= r.delta)
    out.diagnostics.push_back("warning: maximum degree " + std::to_string(stats.maximum) +
                              " reaches the threshold " + std::to_string(r.delta));

  if (r.ell % 2 == 1 && r.target_k > 2) {
    out.status = Status::ParityMismatch;
    out.diagnostics.push_back("odd ell = " + std::to_string(r.ell) + " cannot join " + std::to_string(r.target_k) +
                              " cores pairwise in a bipartite graph");
    return out;
  }
  // Prefixes need a middle segment of length >= 1.
  const int r1 = std::min(r.r1, (r.ell - 1) / 2);
  if (r1 != r.r1) tr.note("r1_effective", std::to_string(r1) + " (ell = " + std::to_string(r.ell) + ")");

  // Far-apart cores, relaxing the spacing when the graph is too small.
  const int want_dist = 3 * r.r2 + 1;
  std::vector<Vertex> cores;
  int used_dist = want_dist;
  for (int md = want_dist; md >= 1 && static_cast<int>(cores.size()) < r.target_k; --md) {
    std::vector<Vertex> best;
    if (r.ell % 2 == 1) {
      // One core per side.
      const auto a = select_far_apart_cores(g, 1, md, 0);
      if (!a.cores.empty()) {
        const Vertex src[] = {a.cores[0]};
        const auto dist = bfs_distances(g, src);
        best = a.cores;
        for (Vertex v = 0; v < static_cast<Vertex>(g.size()) && r.target_k == 2; ++v)
          if ((*sides)[static_cast<std::size_t>(v)] == 1 && dist[static_cast<std::size_t>(v)] >= md) {
            best.push_back(v);
            break;
          }
      }
    } else {
      for (int side : {0, 1}) {
        auto sel = select_far_apart_cores(g, r.target_k, md, side);
        if (sel.cores.size() > best.size()) best = sel.cores;
      }
    }
    if (best.size() > cores.size()) {
      cores = best;
      used_dist = md;
    }
  }
  if (used_dist < want_dist)
    out.diagnostics.push_back("warning: core spacing relaxed from " + std::to_string(want_dist) + " to " +
                              std::to_string(used_dist));
  tr.note("core_spacing", "wanted " + std::to_string(want_dist) + ", used " + std::to_string(used_dist));

  std::vector<VertexSet> balls;
  for (Vertex c : cores) {
    const Vertex src[] = {c};
    balls.push_back(ball(g, src, r1));
  }
  const BoundedFamily family{g, cores, balls, r1};
  PairFiller filler(cores, cfg.max_steps, out.diagnostics);
  const auto active = [&](int q) { return filler.active(q); };

  auto attempt = [&](int i, int j, int variant) -> std::optional<Path> {
    const Vertex ci = cores[static_cast<std::size_t>(i)];
    const Vertex cj = cores[static_cast<std::size_t>(j)];
    const auto& committed = filler.committed();
    std::vector<Vertex> w;
    for (const auto& c : committed)
      for (Vertex v : c.path.vertices) w.push_back(v);
    for (int q = 0; q < static_cast<int>(cores.size()); ++q)
      if (q != i && q != j && active(q)) {
        w.push_back(cores[static_cast<std::size_t>(q)]);
        w.insert(w.end(), balls[static_cast<std::size_t>(q)].begin(), balls[static_cast<std::size_t>(q)].end());
      }
    VertexSet blocked = set_difference(make_set(std::move(w)), make_set({ci, cj}));

    // Prefix candidates: ends at residual distance exactly r1 inside V_q.
    auto prefixes = [&](int q) {
      const Vertex root = cores[static_cast<std::size_t>(q)];
      const PathFan f = family.fan(q, committed);
      VertexMask off(g.size());
      for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
        if (!set_contains(balls[static_cast<std::size_t>(q)], v) || set_contains(blocked, v)) off.insert(v);
      for (const Path& p : f.paths)
        for (Vertex v : p.vertices) off.insert(v);
      off.erase(root);
      std::vector<Path> out_paths;
      if (r1 == 0) {
        out_paths.push_back(Path{{root}});
        return out_paths;
      }
      const Vertex src[] = {root};
      const auto dist = bfs_distances(g, src, &off, r1);
      for (Vertex x : balls[static_cast<std::size_t>(q)])
        if (dist[static_cast<std::size_t>(x)] == r1) {
          const auto p = connect_avoiding(g, {root}, {x}, off.members());
          if (p) out_paths.push_back(*p.value);
        }
      return out_paths;
    };
    const auto li_all = prefixes(i);
    const auto lj_all = prefixes(j);
    if (li_all.empty() || lj_all.empty()) return std::nullopt;
    const Path& li = li_all[static_cast<std::size_t>(variant) % li_all.size()];
    const Path& lj = lj_all[(static_cast<std::size_t>(variant) / li_all.size()) % lj_all.size()];
    if (!sets_disjoint(make_set(li.vertices), make_set(lj.vertices))) return std::nullopt;
    const Vertex xi = li.back();
    const Vertex xj = lj.back();

    // The middle stays off every inner ball and both prefixes.
    std::vector<Vertex> mid_avoid(blocked.begin(), blocked.end());
    for (std::size_t q = 0; q < cores.size(); ++q) {
      if (!active(static_cast<int>(q))) continue;
      mid_avoid.insert(mid_avoid.end(), balls[q].begin(), balls[q].end());
      mid_avoid.push_back(cores[q]);
    }
    mid_avoid.insert(mid_avoid.end(), li.vertices.begin(), li.vertices.end());
    mid_avoid.insert(mid_avoid.end(), lj.vertices.begin(), lj.vertices.end());
    const VertexSet avoid = set_difference(make_set(std::move(mid_avoid)), make_set({xi, xj}));
    auto grow = [&](Vertex root, const VertexSet& extra) {
      auto e = grow_expansion(g, root, r.expansion, r.r2, set_union(avoid, extra));
      return e ? *e.value : Expansion{root, {root}, r.r2};
    };
    const Expansion fi = grow(xi, {xj});
    const Expansion fj = grow(xj, set_union(fi.members, make_set({xi})));
    const auto mid = connect_exact_length(g, fi, fj, r.ell - 2 * r1, avoid, cfg.connect);
    if (!mid) return std::nullopt;
    const Path m = mid->front() == xi ? *mid.value : mid->reversed();
    const Path full = join(join(li, m), lj.reversed());
    if (full.length() != r.ell || !is_simple_path(g, full)) return std::nullopt;
    for (Vertex v : full.interior())
      if (set_contains(blocked, v)) return std::nullopt;

    // Reject unless every clause still holds with the new path.
    auto trial = committed;
    trial.push_back({i, j, full});
    if (!family.all_clauses(trial, active)) return std::nullopt;
    return full;
  };
  auto audit = [&](const std::vector<PairFiller::Committed>& fam) -> int {
    std::vector<PairFiller::Committed> prefix;
    for (std::size_t t = 0; t < fam.size(); ++t) {
      prefix.push_back(fam[t]);
      if (!family.all_clauses(prefix, active)) return static_cast<int>(t);
    }
    return -1;
  };
  filler.run(attempt, audit);
  if (!family.all_clauses(filler.committed(), active))
    throw std::logic_error("build_sparse_bounded: committed family violates its clauses");
  out.cert = filler.certificate(r.ell);
  check_or_throw(g, out.cert, "build_sparse_bounded");
  if (out.cert.k() < r.target_k) out.status = Status::Insufficient;
  return out;
}

StripResult strip_high_degree(const Graph& g, int threshold) {
  StripResult out;
  VertexSet keep;
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
    (g.degree(v) >= threshold ? out.removed : keep).push_back(v);
  out.subgraph = induced_subgraph(g, keep);
  const DegreeStats before = degree_stats(g);
  const DegreeStats after = degree_stats(out.subgraph.graph);
  out.min_degree_kept = !out.subgraph.graph.empty() && 3LL * after.minimum > before.minimum;
  return out;
}

namespace {

// Component with the most edges (ties: smallest vertex), as a subgraph.
Subgraph best_component(const Graph& g) {
  const auto comp = components(g);
  std::vector<std::size_t> edges(g.size(), 0);
  for (const auto& [u, v] : g.edges()) ++edges[static_cast<std::size_t>(comp[static_cast<std::size_t>(u)])];
  std::size_t best = 0;
  for (std::size_t c = 0; c < g.size(); ++c)
    if (edges[c] > edges[best]) best = c;
  VertexSet keep;
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
    if (comp[static_cast<std::size_t>(v)] == static_cast<int>(best)) keep.push_back(v);
  return induced_subgraph(g, keep);
}

Subgraph compose(const Subgraph& inner, const std::vector<Vertex>& outer_to_parent) {
  Subgraph s = inner;
  for (auto& v : s.to_parent) v = outer_to_parent[static_cast<std::size_t>(v)];
  return s;
}

// Two cores joined by one path of length ell if any exists nearby, else an edge.
SubdivisionCertificate trivial_certificate(const Graph& g, int ell) {
  SubdivisionCertificate cert;
  if (g.empty()) return cert;
  if (g.edge_count() == 0) {
    cert.cores = {0};
    return cert;
  }
  int tries = 0;
  for (Vertex s = 0; s < static_cast<Vertex>(g.size()) && tries < 16; ++s) {
    if (g.degree(s) == 0) continue;
    ++tries;
    const Vertex src[] = {s};
    const auto dist = bfs_distances(g, src, nullptr, ell);
    for (Vertex t = 0; t < static_cast<Vertex>(g.size()); ++t) {
      if (t == s || dist[static_cast<std::size_t>(t)] == kUnreachable || dist[static_cast<std::size_t>(t)] % 2 != ell % 2)
        continue;
      const auto p = find_path_exact_length(g, s, t, ell, VertexMask(g.size()), 20'000);
      if (p) {
        cert.ell = ell;
        cert.cores = {s, t};
        cert.paths[{0, 1}] = *p.value;
        return cert;
      }
    }
  }
  const auto [u, v] = g.edges().front();
  cert.ell = 1;
  cert.cores = {u, v};
  cert.paths[{0, 1}] = Path{{u, v}};
  return cert;
}

}  // namespace

AutoResult build_auto(const Graph& g, const BuildConfig& cfg) {
  cfg.validate();
  AutoResult out;
  Tracer tr(out.trace);
  const DegreeStats whole = degree_stats(g);
  tr.note("preset", preset_name(cfg.preset));
  tr.note("input", "n=" + std::to_string(g.size()) + " m=" + std::to_string(g.edge_count()) + " d=" + num(whole.average()));
  const int fallback_ell = cfg.ell > 0 ? cfg.ell : 2;

  auto finish_fallback = [&](const std::string& why) {
    out.cert = trivial_certificate(g, fallback_ell);
    out.fallback = true;
    out.diagnostics.push_back("fallback: " + why);
    tr.note("fallback", why);
    check_or_throw(g, out.cert, "build_auto");
    return out;
  };
  if (g.edge_count() == 0) {
    out.branch = "trivial";
    return finish_fallback("edgeless input");
  }

  // Extraction.
  const double d0_f = whole.average() / 8.0;
  const double d0 = cfg.preset == Preset::Desk ? whole.average() / 2.0 : d0_f;
  tr.param("d0", "d(G)/8", d0_f, d0);
  Subgraph h;
  const auto ext = extract_bipartite_expander(g, d0, cfg.epsilon2, cfg.epsilon1, cfg.expansion_budget);
  if (ext) {
    h = ext->subgraph;
    for (const auto& w : ext->warnings) out.diagnostics.push_back(w);
    tr.note("extraction", std::string("ok, expansion ") + mode_name(ext->report.mode) +
                              (ext->report.holds ? " holds" : " violated"));
  } else {
    tr.note("extraction", std::string(status_name(ext.status)) + ": " + ext.detail);
    const auto cut = greedy_max_cut(g);
    const Graph crossing = filter_edges(g, [&](Vertex u, Vertex v) {
      return cut[static_cast<std::size_t>(u)] != cut[static_cast<std::size_t>(v)];
    });
    h = Subgraph{crossing, {}};
    for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) h.to_parent.push_back(v);
  }
  if (h.graph.edge_count() == 0) {
    out.branch = "trivial";
    return finish_fallback("no edges left after extraction");
  }
  h = compose(best_component(h.graph), h.to_parent);
  const DegreeStats hs = degree_stats(h.graph);
  tr.note("working_graph", "n=" + std::to_string(h.graph.size()) + " d=" + num(hs.average()) +
                               " min_degree=" + std::to_string(hs.minimum) + " max_degree=" + std::to_string(hs.maximum));

  // Dispatch.
  const double d = std::max(1.0, hs.average());
  std::vector<TraceEntry> scratch;
  Tracer quiet(scratch);
  const Resolved base = resolve(cfg, d, h.graph.size(), Branch::Dense, quiet);
  const double dense_threshold = std::pow(std::log(std::max<double>(2.0, static_cast<double>(h.graph.size()))), base.s);
  tr.note("dense_test", "min_degree " + std::to_string(hs.minimum) + " >= (ln n_H)^s = " + num(dense_threshold));

  BuildResult built;
  std::vector<Vertex> to_g = h.to_parent;
  const double t2 = std::min({cfg.epsilon1 * cfg.epsilon2 / (8.0 * std::pow(std::log(7.5), 2)), cfg.t3, cfg.t4 / 3.0});
  int high = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(h.graph.size()); ++v)
    if (h.graph.degree(v) >= base.delta) ++high;
  tr.note("high_degree", std::to_string(high) + " vertices of degree >= " + std::to_string(base.delta) +
                             "; branch test |L| >= 2*t2*d = " + num(2.0 * t2 * d));

  auto run_bounded = [&]() {
    const auto strip = strip_high_degree(h.graph, base.delta);
    tr.note("strip", "removed " + std::to_string(strip.removed.size()) + ", min degree kept above a third: " +
                         (strip.min_degree_kept ? "yes" : "no"));
    const Subgraph rest = compose(best_component(strip.subgraph.graph), strip.subgraph.to_parent);
    to_g = compose(rest, h.to_parent).to_parent;
    out.branch = "bounded";
    if (rest.graph.edge_count() == 0) return BuildResult{};
    return build_sparse_bounded(rest.graph, cfg);
  };

  if (hs.minimum >= dense_threshold) {
    out.branch = "dense";
    built = build_dense(h.graph, cfg);
  } else if (high >= std::max(1.0, 2.0 * t2 * d)) {
    out.branch = "highdeg";
    built = build_sparse_highdeg(h.graph, cfg);
    if (built.status == Status::PreconditionUnmet) {
      tr.note("highdeg", "precondition unmet, switching to bounded");
      for (const auto& s : built.diagnostics) out.diagnostics.push_back(s);
      built = run_bounded();
    }
  } else {
    built = run_bounded();
  }
  tr.note("branch", out.branch);
  for (const auto& e : built.trace) out.trace.push_back(e);
  for (const auto& s : built.diagnostics) out.diagnostics.push_back(s);
  if (built.status != Status::Ok) tr.note("branch_status", status_name(built.status));

  if (built.cert.k() < 2) return finish_fallback("branch " + out.branch + " produced fewer than two cores");
  out.cert = built.cert.lifted(to_g);
  check_or_throw(g, out.cert, "build_auto");
  tr.note("result", "k=" + std::to_string(out.cert.k()) + " ell=" + std::to_string(out.cert.ell));
  return out;
}

}  // namespace tksub
