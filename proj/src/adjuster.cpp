#include "tksub/adjuster.hpp"

#include <stdexcept>
#include <string>

namespace tksub {

namespace {

// BFS path from s to t inside G[members]; empty if none.
Path path_within(const Graph& g, const VertexSet& members, Vertex s, Vertex t) {
  if (s == t) return Path{{s}};
  VertexMask outside(g.size());
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) outside.insert(v);
  for (Vertex v : members) outside.erase(v);
  std::vector<Vertex> parent(g.size(), -1);
  std::vector<Vertex> queue{s};
  parent[static_cast<std::size_t>(s)] = s;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex w : g.neighbors(u)) {
      if (outside.contains(w) || parent[static_cast<std::size_t>(w)] >= 0) continue;
      parent[static_cast<std::size_t>(w)] = u;
      if (w == t) {
        Path p;
        for (Vertex v = t; v != s; v = parent[static_cast<std::size_t>(v)]) p.vertices.push_back(v);
        p.vertices.push_back(s);
        std::reverse(p.vertices.begin(), p.vertices.end());
        return p;
      }
      queue.push_back(w);
    }
  }
  return {};
}

// Path oriented to start at `from`.
Path oriented(const Path& p, Vertex from) { return p.front() == from ? p : p.reversed(); }

VertexSet path_set(const Path& p) { return make_set(p.vertices); }

VertexSet with(VertexSet s, std::initializer_list<Vertex> extra) {
  for (Vertex v : extra) s.push_back(v);
  return make_set(std::move(s));
}

// Arc of the cycle c from position i walking `steps` edges in direction dir.
Path arc(const Path& c, int i, int dir, int steps) {
  const int len = static_cast<int>(c.vertices.size());
  Path p;
  for (int s = 0; s <= steps; ++s)
    p.vertices.push_back(c.vertices[static_cast<std::size_t>(((i + dir * s) % len + len) % len)]);
  return p;
}

}  // namespace

VertexSet Adjuster::vertices() const {
  return set_union(set_union(A, F1.members), set_union(F2.members, make_set({v1, v2})));
}

Verdict verify_adjuster(const Graph& g, const Adjuster& adj, int D, int m) {
  if (!sets_disjoint(adj.A, adj.F1.members) || !sets_disjoint(adj.A, adj.F2.members) ||
      !sets_disjoint(adj.F1.members, adj.F2.members))
    return Verdict::fail("A1", "A, F1, F2 not pairwise disjoint");
  for (const auto& [f, v, name] : {std::tuple{&adj.F1, adj.v1, "F1"}, std::tuple{&adj.F2, adj.v2, "F2"}}) {
    if (f->root != v) return Verdict::fail("A2", std::string(name) + " is not rooted at its vertex");
    Expansion e = *f;
    e.radius_bound = m;
    if (auto v2 = verify_expansion(g, e, D); !v2)
      return Verdict::fail("A2", std::string(name) + ": " + v2.clause + " " + v2.reason);
  }
  if (adj.k < 0) return Verdict::fail("A4", "negative range");
  if (static_cast<std::int64_t>(adj.A.size()) > 10LL * m * adj.k)
    return Verdict::fail("A3", "|A| = " + std::to_string(adj.A.size()) + " > 10mk = " +
                                   std::to_string(10LL * m * adj.k));
  if (adj.path_family.size() != static_cast<std::size_t>(adj.k) + 1)
    return Verdict::fail("A4", "path family has " + std::to_string(adj.path_family.size()) +
                                   " paths, expected " + std::to_string(adj.k + 1));
  const VertexSet allowed = with(adj.A, {adj.v1, adj.v2});
  for (int i = 0; i <= adj.k; ++i) {
    const Path& p = adj.path_family[static_cast<std::size_t>(i)];
    const std::string which = "path " + std::to_string(i);
    if (!is_simple_path(g, p)) return Verdict::fail("A4", which + " is not a simple path of g");
    if (p.front() != adj.v1 || p.back() != adj.v2) return Verdict::fail("A4", which + " has wrong endpoints");
    if (p.length() != adj.base_length + 2 * i)
      return Verdict::fail("A4", which + " has length " + std::to_string(p.length()) + ", expected " +
                                     std::to_string(adj.base_length + 2 * i));
    for (Vertex v : p.vertices)
      if (!set_contains(allowed, v)) return Verdict::fail("A4", which + " leaves A");
  }
  if (adj.base_length > static_cast<int>(adj.A.size()) + 1)
    return Verdict::fail("base", "base length exceeds |A| + 1");
  return Verdict::pass();
}

int minimal_base_length(const Graph& g, const Adjuster& adj) {
  const VertexSet allowed = with(adj.A, {adj.v1, adj.v2});
  VertexMask blocked(g.size());
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
    if (!set_contains(allowed, v)) blocked.insert(v);
  const Vertex src[] = {adj.v1};
  const auto dist = bfs_distances(g, src, &blocked);
  const int d = dist[static_cast<std::size_t>(adj.v2)];
  if (d == kUnreachable) return adj.base_length;
  for (int base = d; base < adj.base_length; ++base) {
    bool all = true;
    for (int i = 0; i <= adj.k && all; ++i)
      all = find_path_exact_length(g, adj.v1, adj.v2, base + 2 * i, blocked).ok();
    if (all) return base;
  }
  return adj.base_length;
}

Outcome<Adjuster> build_simple_adjuster(const Graph& g, int D, int max_m, const VertexSet& avoid,
                                        int max_attempts) {
  using Result = Outcome<Adjuster>;
  if (!bipartition(g)) throw std::invalid_argument("build_simple_adjuster: graph is not bipartite");
  if (D < 1) throw std::invalid_argument("build_simple_adjuster: D must be positive");
  VertexSet excluded;
  std::string last_reason;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const auto cycle = shortest_cycle(g, VertexMask(g.size(), set_union(avoid, excluded)));
    if (!cycle) {
      if (attempt == 0) return Result::failure(Status::NoCycle, "G - avoid is acyclic");
      break;
    }
    const int len = static_cast<int>(cycle->vertices.size());
    const int gap = len / 2 - 1;
    const VertexSet C = path_set(*cycle);
    if (static_cast<std::int64_t>(C.size()) - 2 > 10LL * max_m) {
      last_reason = "shortest cycle too long for m = " + std::to_string(max_m);
      excluded = set_union(excluded, C);
      continue;
    }
    for (int pos = 0; pos < len; ++pos)
      for (int dir : {1, -1}) {
        const Path shortarc = arc(*cycle, pos, dir, gap);
        const Path longarc = arc(*cycle, pos, -dir, len - gap);
        const Vertex x1 = shortarc.front();
        const Vertex x2 = shortarc.back();
        const VertexSet c1 = set_difference(C, {x1});
        auto f1 = grow_expansion(g, x1, D, max_m, set_union(avoid, c1));
        if (!f1) {
          last_reason = "F1 at " + std::to_string(x1) + ": " + f1.detail;
          continue;
        }
        const VertexSet c2 = set_difference(C, {x2});
        auto f2 = grow_expansion(g, x2, D, max_m, set_union(set_union(avoid, c2), f1->members));
        if (!f2) {
          last_reason = "F2 at " + std::to_string(x2) + ": " + f2.detail;
          continue;
        }
        Adjuster adj;
        adj.v1 = x1;
        adj.v2 = x2;
        adj.F1 = *f1.value;
        adj.F2 = *f2.value;
        adj.A = set_difference(C, make_set({x1, x2}));
        adj.k = 1;
        adj.base_length = gap;
        adj.path_family = {shortarc, longarc};
        return Result::success(std::move(adj));
      }
    excluded = set_union(excluded, C);
  }
  return Result::failure(Status::InsufficientExpansion, "no placement admits disjoint expansions of size " +
                                                            std::to_string(D) + " (" + last_reason + ")");
}

ChainResult chain_adjusters(const Graph& g, int target_r, int D, int m, const VertexSet& avoid) {
  if (target_r < 1) throw std::invalid_argument("chain_adjusters: target range must be at least 1");
  ChainResult out;
  auto first = build_simple_adjuster(g, D, m, avoid);
  if (!first) {
    out.status = first.status;
    out.failed_stage = 1;
    out.detail = first.detail;
    return out;
  }
  Adjuster cur = *first.value;
  auto fail = [&](Status s, int stage, std::string why) {
    out.adjuster = cur;
    out.status = s;
    out.failed_stage = stage;
    out.detail = std::move(why);
    return out;
  };

  for (int stage = 2; stage <= target_r; ++stage) {
    const auto next = build_simple_adjuster(g, D, m, set_union(avoid, cur.vertices()));
    if (!next) return fail(next.status, stage, next.detail);
    const Adjuster& nx = *next.value;
    const auto link = connect_avoiding(g, set_union(cur.F1.members, cur.F2.members),
                                       set_union(nx.F1.members, nx.F2.members),
                                       set_union(avoid, set_union(cur.A, nx.A)), m);
    if (!link) return fail(link.status, stage, "joining path: " + link.detail);

    const bool a_first = set_contains(cur.F1.members, link->front());
    const bool b_first = set_contains(nx.F1.members, link->back());
    const Expansion& fa = a_first ? cur.F1 : cur.F2;
    const Expansion& fa_out = a_first ? cur.F2 : cur.F1;
    const Expansion& fb = b_first ? nx.F1 : nx.F2;
    const Expansion& fb_out = b_first ? nx.F2 : nx.F1;

    const Path q = join(join(path_within(g, fa.members, fa.root, link->front()), *link.value),
                        path_within(g, fb.members, link->back(), fb.root));
    Adjuster joined;
    joined.v1 = fa_out.root;
    joined.v2 = fb_out.root;
    joined.F1 = fa_out;
    joined.F2 = fb_out;
    joined.A = set_union(set_union(cur.A, nx.A), path_set(q));
    joined.k = cur.k + 1;
    joined.base_length = cur.base_length + nx.base_length + q.length();
    for (int i = 0; i <= joined.k; ++i) {
      const int i1 = std::min(i, cur.k);
      const int i2 = i - i1;
      const Path p1 = oriented(cur.path_family[static_cast<std::size_t>(i1)], joined.v1);
      const Path p2 = oriented(nx.path_family[static_cast<std::size_t>(i2)], fb.root);
      joined.path_family.push_back(join(join(p1, q), p2));
    }
    if (static_cast<std::int64_t>(joined.A.size()) > 10LL * m * joined.k)
      return fail(Status::Insufficient, stage,
                  "|A| = " + std::to_string(joined.A.size()) + " exceeds 10mk after joining");
    cur = std::move(joined);
  }
  out.adjuster = std::move(cur);
  return out;
}

Outcome<PathPair> connect_pair_sum_length(const Graph& g, const Expansion& f1, const Expansion& f2,
                                          const Expansion& f3, const Expansion& f4, int target_sum,
                                          int slack, const VertexSet& avoid,
                                          std::uint64_t search_budget) {
  using Result = Outcome<PathPair>;
  const Expansion* fs[] = {&f1, &f2, &f3, &f4};
  for (int i = 0; i < 4; ++i) {
    if (!sets_disjoint(fs[i]->members, avoid))
      throw std::invalid_argument("connect_pair_sum_length: expansion meets the avoid set");
    for (int j = i + 1; j < 4; ++j)
      if (!sets_disjoint(fs[i]->members, fs[j]->members))
        throw std::invalid_argument("connect_pair_sum_length: expansions overlap");
  }
  if (slack < 0) throw std::invalid_argument("connect_pair_sum_length: negative slack");
  const int lo = target_sum;
  const int hi = target_sum + slack;
  const auto sides = bipartition(g);

  int best_sum = -1;
  std::string best_stage = "none";
  auto consider = [&](const Path& a, const Path& b, const char* stage) {
    const int sum = a.length() + b.length();
    const auto gap = [&](int s) { return s < lo ? lo - s : (s > hi ? s - hi : 0); };
    if (best_sum < 0 || gap(sum) < gap(best_sum)) {
      best_sum = sum;
      best_stage = stage;
    }
    return sum >= lo && sum <= hi;
  };

  struct Route {
    const Expansion* from;
    const Expansion* to;
  };
  const std::pair<Route, Route> pairings[] = {{{&f1, &f3}, {&f2, &f4}}, {{&f1, &f4}, {&f2, &f3}}};

  for (const auto& [r1, r2] : pairings) {
    if (sides) {
      const auto side = [&](Vertex v) { return (*sides)[static_cast<std::size_t>(v)]; };
      const int parity = (side(r1.from->root) ^ side(r1.to->root)) + (side(r2.from->root) ^ side(r2.to->root));
      if ((parity % 2 != lo % 2) && slack == 0) continue;  // only the wrong parity fits
    }
    for (int order = 0; order < 2; ++order) {
      const Route& x = order == 0 ? r1 : r2;
      const Route& y = order == 0 ? r2 : r1;
      const Vertex xs = x.from->root;
      const Vertex xt = x.to->root;
      const VertexSet first_avoid = with(avoid, {y.from->root, y.to->root});
      auto finish = [&](const Path& first, const char* stage) -> std::optional<PathPair> {
        const auto second =
            connect_avoiding(g, {y.from->root}, {y.to->root}, set_union(avoid, path_set(first)));
        if (!second) return std::nullopt;
        if (!consider(first, *second.value, stage)) return std::nullopt;
        return order == 0 ? PathPair{first, *second.value} : PathPair{*second.value, first};
      };

      // Shortest routes.
      const auto direct = connect_avoiding(g, {xs}, {xt}, first_avoid);
      if (!direct) continue;
      if (auto pp = finish(*direct.value, "shortest")) return Result::success(std::move(*pp), "shortest");
      if (direct->length() > hi) continue;

      // Detours through the BFS trees of both expansions: leave F_x at u,
      // enter F_y at w.
      auto by_depth = [&](const Expansion& e) {
        std::vector<std::pair<int, Vertex>> order_list;
        for (Vertex u : e.members) order_list.emplace_back(-path_within(g, e.members, e.root, u).length(), u);
        std::sort(order_list.begin(), order_list.end());
        return order_list;
      };
      int tried = 0;
      for (const auto& [du, u] : by_depth(*x.from)) {
        const Path head = path_within(g, x.from->members, xs, u);
        for (const auto& [dw, w] : by_depth(*x.to)) {
          if (++tried > 256) break;
          const Path tail = path_within(g, x.to->members, w, xt);
          VertexSet mid_avoid = set_union(first_avoid, set_union(path_set(head), path_set(tail)));
          mid_avoid = set_difference(mid_avoid, make_set({u, w}));
          if (u == w) continue;
          const auto mid = connect_avoiding(g, {u}, {w}, mid_avoid);
          if (!mid) continue;
          const Path first = join(join(head, *mid.value), tail);
          if (auto pp = finish(first, "detour")) return Result::success(std::move(*pp), "detour");
        }
      }

      // Exact-length routing of the first path; the second stays shortest.
      const int step = sides ? 2 : 1;
      const VertexMask blocked(g.size(), first_avoid);
      for (int len = direct->length() + step; len <= hi; len += step) {
        const auto p = find_path_exact_length(g, xs, xt, len, blocked, search_budget);
        if (!p) {
          if (p.status == Status::BudgetExceeded) best_stage = "exact (budget exhausted)";
          continue;
        }
        if (auto pp = finish(*p.value, "exact")) return Result::success(std::move(*pp), "exact");
      }
    }
  }
  return Result::failure(Status::Unsatisfiable,
                         "window [" + std::to_string(lo) + "," + std::to_string(hi) + "] unreached; best sum " +
                             std::to_string(best_sum) + " at stage " + best_stage);
}

namespace {

std::optional<Path> via_adjuster_range(const Graph& g, const Expansion& f1, const Expansion& f2, int ell,
                                       const VertexSet& avoid, const ConnectConfig& cfg, int range) {
  const VertexSet used = set_union(avoid, set_union(f1.members, f2.members));
  const auto chain = chain_adjusters(g, range, cfg.adjuster_D, cfg.m, used);
  if (!chain.adjuster) return std::nullopt;
  const Adjuster& adj = *chain.adjuster;
  const int top = ell - adj.base_length;
  if (top < 2) return std::nullopt;
  const int lo = std::max(0, top - 2 * adj.k);
  const auto pq = connect_pair_sum_length(g, f1, f2, adj.F1, adj.F2, lo, top - lo,
                                          set_union(avoid, adj.A), cfg.search_budget);
  if (!pq) return std::nullopt;
  const int rest = top - pq->p.length() - pq->q.length();
  if (rest < 0 || rest % 2 != 0 || rest / 2 > adj.k) return std::nullopt;
  const Path r = oriented(adj.path_family[static_cast<std::size_t>(rest / 2)], pq->p.back());
  if (r.back() != pq->q.back()) return std::nullopt;
  Path whole = join(join(pq->p, r), pq->q.reversed());
  if (whole.front() != f1.root) whole = whole.reversed();
  if (whole.length() != ell || !is_simple_path(g, whole) || whole.back() != f2.root) return std::nullopt;
  for (Vertex v : whole.vertices)
    if (set_contains(avoid, v)) return std::nullopt;
  return whole;
}

// Longer chains have longer bases, so short targets fall back to smaller ranges.
std::optional<Path> via_adjuster(const Graph& g, const Expansion& f1, const Expansion& f2, int ell,
                                 const VertexSet& avoid, const ConnectConfig& cfg) {
  for (int range = cfg.adjuster_range; range >= 1; --range)
    if (auto p = via_adjuster_range(g, f1, f2, ell, avoid, cfg, range)) return p;
  return std::nullopt;
}

}  // namespace

Outcome<Path> connect_exact_length(const Graph& g, const Expansion& f1, const Expansion& f2,
                                   int ell, const VertexSet& avoid, const ConnectConfig& cfg) {
  using Result = Outcome<Path>;
  const auto sides = bipartition(g);
  if (!sides) throw std::invalid_argument("connect_exact_length: graph is not bipartite");
  if (!g.valid(f1.root) || !g.valid(f2.root)) throw std::invalid_argument("connect_exact_length: bad root");
  if (!sets_disjoint(f1.members, f2.members) || !sets_disjoint(f1.members, avoid) ||
      !sets_disjoint(f2.members, avoid))
    throw std::invalid_argument("connect_exact_length: expansions overlap each other or the avoid set");
  const Vertex v1 = f1.root;
  const Vertex v2 = f2.root;
  const int parity = pi(*sides, v1, v2) % 2;
  if (ell < 0 || ell % 2 != parity)
    return Result::failure(Status::ParityMismatch, "ell = " + std::to_string(ell) + " but pi(v1,v2) = " +
                                                       std::to_string(pi(*sides, v1, v2)));
  const auto comp = components(g);
  if (comp[static_cast<std::size_t>(v1)] != comp[static_cast<std::size_t>(v2)])
    return Result::failure(Status::Unsatisfiable, "roots lie in different components");

  std::string stages;
  // Base >= 1 plus two connections of length >= 1 each.
  if (cfg.use_adjuster && ell >= 3) {
    if (auto p = via_adjuster(g, f1, f2, ell, avoid, cfg)) return Result::success(std::move(*p), "adjuster");
    stages = "adjuster failed";
  }
  if (cfg.direct_fallback) {
    const auto p = find_path_exact_length(g, v1, v2, ell, VertexMask(g.size(), avoid), cfg.search_budget);
    if (p) return Result::success(*p.value, "direct");
    stages += (stages.empty() ? "" : "; ") + std::string("direct: ") + status_name(p.status);
  }
  return Result::failure(Status::Unsatisfiable, stages.empty() ? "no stage enabled" : stages);
}

}  // namespace tksub
