#include "tksub/connect.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace tksub {

namespace {

// Distances from root inside the induced subgraph on `members`.
std::vector<int> inner_distances(const Graph& g, const VertexSet& members, Vertex root) {
  VertexMask outside(g.size());
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) outside.insert(v);
  for (Vertex v : members) outside.erase(v);
  const Vertex src[] = {root};
  return bfs_distances(g, src, &outside);
}

void require_valid(const Graph& g, const VertexSet& s, const char* what) {
  for (Vertex v : s)
    if (!g.valid(v)) throw std::invalid_argument(std::string(what) + ": vertex out of range");
}

}  // namespace

Verdict verify_expansion(const Graph& g, const Expansion& e, int D) {
  if (!g.valid(e.root)) return Verdict::fail("root", "root out of range");
  if (!set_contains(e.members, e.root)) return Verdict::fail("root", "root not a member");
  if (D >= 0 && e.size() != D)
    return Verdict::fail("size", "size " + std::to_string(e.size()) + " != " + std::to_string(D));
  const auto dist = inner_distances(g, e.members, e.root);
  for (Vertex v : e.members) {
    const int dv = dist[static_cast<std::size_t>(v)];
    if (dv == kUnreachable) return Verdict::fail("connected", "member " + std::to_string(v) + " unreachable");
    if (dv > e.radius_bound)
      return Verdict::fail("radius", "member " + std::to_string(v) + " at distance " + std::to_string(dv));
  }
  return Verdict::pass();
}

Expansion trim_expansion(const Graph& g, const Expansion& e, int target) {
  if (target < 1 || target > e.size()) throw std::invalid_argument("trim_expansion: bad target size");
  const auto dist = inner_distances(g, e.members, e.root);
  // Layer by layer, ids ascending: every kept vertex keeps a parent.
  std::vector<Vertex> order(e.members.begin(), e.members.end());
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return dist[static_cast<std::size_t>(a)] < dist[static_cast<std::size_t>(b)];
  });
  order.resize(static_cast<std::size_t>(target));
  return Expansion{e.root, make_set(std::move(order)), e.radius_bound};
}

Outcome<Path> connect_avoiding(const Graph& g, const VertexSet& a, const VertexSet& b,
                               const VertexSet& avoid, int max_len) {
  if (a.empty() || b.empty()) throw std::invalid_argument("connect_avoiding: empty endpoint set");
  require_valid(g, a, "connect_avoiding");
  require_valid(g, b, "connect_avoiding");
  require_valid(g, avoid, "connect_avoiding");
  if (!sets_disjoint(a, avoid) || !sets_disjoint(b, avoid))
    throw std::invalid_argument("connect_avoiding: endpoint set meets the avoid set");

  for (Vertex v : a)
    if (set_contains(b, v)) return Outcome<Path>::success(Path{{v}});

  const VertexMask blocked(g.size(), avoid);
  const VertexMask target(g.size(), b);
  std::vector<Vertex> parent(g.size(), -1);
  std::vector<std::uint8_t> seen(g.size(), 0);
  std::vector<Vertex> layer(a.begin(), a.end());
  for (Vertex v : layer) seen[static_cast<std::size_t>(v)] = 1;
  for (int depth = 1; !layer.empty(); ++depth) {
    std::vector<Vertex> next;
    Vertex hit = -1;
    for (Vertex u : layer)
      for (Vertex w : g.neighbors(u)) {
        if (seen[static_cast<std::size_t>(w)] || blocked.contains(w)) continue;
        seen[static_cast<std::size_t>(w)] = 1;
        parent[static_cast<std::size_t>(w)] = u;
        next.push_back(w);
        if (target.contains(w) && (hit < 0 || w < hit)) hit = w;
      }
    if (hit >= 0) {
      if (max_len >= 0 && depth > max_len)
        return Outcome<Path>::failure(Status::TooLong, "shortest connection has length " +
                                                           std::to_string(depth) + " > " +
                                                           std::to_string(max_len));
      Path p;
      for (Vertex v = hit; v >= 0; v = parent[static_cast<std::size_t>(v)]) p.vertices.push_back(v);
      std::reverse(p.vertices.begin(), p.vertices.end());
      return Outcome<Path>::success(std::move(p));
    }
    layer.swap(next);
  }
  return Outcome<Path>::failure(Status::NoPath, "no path in G - avoid");
}

Outcome<Expansion> grow_expansion(const Graph& g, Vertex v, int target_D, int max_m,
                                  const VertexSet& avoid) {
  if (!g.valid(v)) throw std::invalid_argument("grow_expansion: root out of range");
  if (target_D < 1) throw std::invalid_argument("grow_expansion: target size must be positive");
  if (set_contains(avoid, v)) throw std::invalid_argument("grow_expansion: root is avoided");
  const VertexMask blocked(g.size(), avoid);
  std::vector<std::uint8_t> seen(g.size(), 0);
  seen[static_cast<std::size_t>(v)] = 1;
  std::vector<Vertex> members{v};
  std::vector<Vertex> layer{v};
  int radius = 0;
  while (static_cast<int>(members.size()) < target_D) {
    if (radius == max_m)
      return Outcome<Expansion>::failure(Status::Insufficient,
                                         "only " + std::to_string(members.size()) + " vertices within radius " +
                                             std::to_string(max_m));
    std::vector<Vertex> next;
    for (Vertex u : layer)
      for (Vertex w : g.neighbors(u))
        if (!seen[static_cast<std::size_t>(w)] && !blocked.contains(w)) {
          seen[static_cast<std::size_t>(w)] = 1;
          next.push_back(w);
        }
    if (next.empty())
      return Outcome<Expansion>::failure(Status::Insufficient,
                                         "component has only " + std::to_string(members.size()) + " vertices");
    ++radius;
    std::sort(next.begin(), next.end());
    const std::size_t room = static_cast<std::size_t>(target_D) - members.size();
    if (next.size() > room) next.resize(room);
    members.insert(members.end(), next.begin(), next.end());
    layer.swap(next);
  }
  return Outcome<Expansion>::success(Expansion{v, make_set(std::move(members)), max_m});
}

BallGrowth grow_ball_avoiding(const Graph& g, const VertexSet& y, const VertexSet& w, int radius,
                              int target) {
  if (!sets_disjoint(y, w)) throw std::invalid_argument("grow_ball_avoiding: y meets w");
  BallGrowth out;
  out.ball = ball(g, y, radius, VertexMask(g.size(), w));
  out.met = static_cast<int>(out.ball.size()) >= target;
  return out;
}

bool check_consecutive_shortest(const Graph& g, const PathFan& fan) {
  VertexMask outside(g.size());
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) outside.insert(v);
  for (Vertex v : fan.home) outside.erase(v);
  for (const Path& p : fan.paths) {
    if (!is_simple_path(g, p) || p.front() != fan.root) return false;
    for (Vertex v : p.vertices)
      if (outside.contains(v) && v != fan.root) return false;
    const Vertex src[] = {fan.root};
    VertexMask blocked = outside;
    blocked.erase(fan.root);
    const auto dist = bfs_distances(g, src, &blocked);
    if (dist[static_cast<std::size_t>(p.back())] != p.length()) return false;
    for (Vertex v : p.vertices)
      if (v != fan.root) outside.insert(v);
  }
  return true;
}

Outcome<Path> find_path_exact_length(const Graph& g, Vertex s, Vertex t, int length,
                                     const VertexMask& blocked_in, std::uint64_t node_budget) {
  using Result = Outcome<Path>;
  if (!g.valid(s) || !g.valid(t)) throw std::invalid_argument("find_path_exact_length: vertex out of range");
  const VertexMask blocked = blocked_in.universe() ? blocked_in : VertexMask(g.size());
  if (blocked.contains(s) || blocked.contains(t))
    throw std::invalid_argument("find_path_exact_length: endpoint is blocked");
  if (length < 0) return Result::failure(Status::NoPath, "negative length");
  if (s == t) return length == 0 ? Result::success(Path{{s}}) : Result::failure(Status::NoPath, "s == t");
  if (length == 0 || length + 1 > static_cast<int>(g.size()))
    return Result::failure(Status::NoPath, "length out of range");

  const auto sides = bipartition(g);
  const Vertex tsrc[] = {t};
  const auto dist_t = bfs_distances(g, tsrc, &blocked);

  const std::size_t n = g.size();
  std::vector<std::uint8_t> used(n, 0);
  std::vector<int> stamp(n, 0);
  int clock = 0;
  std::vector<Vertex> queue;

  // Reachability from u within `rem` steps avoiding the current path: t must
  // be reached and enough vertices of each side must be available.
  auto feasible = [&](Vertex u, int rem) {
    ++clock;
    queue.clear();
    queue.push_back(u);
    stamp[static_cast<std::size_t>(u)] = clock;
    int count[2] = {0, 0};
    bool reached_t = false;
    std::size_t head = 0;
    for (int depth = 0; depth < rem && head < queue.size(); ++depth) {
      const std::size_t end = queue.size();
      for (; head < end; ++head) {
        const Vertex x = queue[head];
        if (x == t) continue;  // t only closes the path
        for (Vertex w : g.neighbors(x)) {
          const auto wi = static_cast<std::size_t>(w);
          if (stamp[wi] == clock || used[wi] || blocked.contains(w)) continue;
          stamp[wi] = clock;
          queue.push_back(w);
          if (w == t) reached_t = true;
          if (sides) ++count[(*sides)[wi]];
          else ++count[0];
        }
      }
    }
    if (!reached_t) return false;
    if (!sides) return count[0] >= rem;
    const int su = (*sides)[static_cast<std::size_t>(u)];
    return count[1 - su] >= (rem + 1) / 2 && count[su] >= rem / 2;
  };

  std::vector<Vertex> path{s};
  used[static_cast<std::size_t>(s)] = 1;
  std::uint64_t nodes = 0;
  bool over = false;

  std::function<bool(Vertex, int)> dfs = [&](Vertex u, int rem) -> bool {
    if (++nodes > node_budget) {
      over = true;
      return false;
    }
    const int du = dist_t[static_cast<std::size_t>(u)];
    if (du == kUnreachable || du > rem) return false;
    if (sides && (rem - du) % 2 != 0) return false;
    if (rem == 1) {
      if (!g.has_edge(u, t)) return false;
      path.push_back(t);
      return true;
    }
    if (rem > du && !feasible(u, rem)) return false;
    for (Vertex w : g.neighbors(u)) {
      const auto wi = static_cast<std::size_t>(w);
      if (w == t || used[wi] || blocked.contains(w)) continue;
      used[wi] = 1;
      path.push_back(w);
      if (dfs(w, rem - 1)) return true;
      path.pop_back();
      used[wi] = 0;
      if (over) return false;
    }
    return false;
  };

  if (dfs(s, length)) return Result::success(Path{path});
  if (over)
    return Result::failure(Status::BudgetExceeded,
                           "search budget of " + std::to_string(node_budget) + " nodes exhausted");
  return Result::failure(Status::NoPath, "no simple path of length " + std::to_string(length));
}

}  // namespace tksub
