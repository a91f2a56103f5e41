#include "tksub/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>
#include <string>

#include "tksub/kernels.hpp"

namespace tksub {

const char* status_name(Status s) {
  switch (s) {
    case Status::Ok: return "Ok";
    case Status::NoPath: return "NoPath";
    case Status::TooLong: return "TooLong";
    case Status::Insufficient: return "Insufficient";
    case Status::NoCycle: return "NoCycle";
    case Status::InsufficientExpansion: return "InsufficientExpansion";
    case Status::ParityMismatch: return "ParityMismatch";
    case Status::Unsatisfiable: return "Unsatisfiable";
    case Status::PreconditionUnmet: return "PreconditionUnmet";
    case Status::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges, std::size_t* duplicates) {
  Graph g(n);
  for (const auto& [u, v] : edges) {
    if (!g.valid(u) || !g.valid(v))
      throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") out of range for n=" + std::to_string(n));
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    g.adj_[static_cast<std::size_t>(u)].push_back(v);
    g.adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  std::size_t twice = 0;
  std::size_t before = 0;
  for (auto& list : g.adj_) {
    before += list.size();
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    twice += list.size();
  }
  g.edges_ = twice / 2;
  if (duplicates) *duplicates = (before - twice) / 2;
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (!valid(u) || !valid(v)) return false;
  const auto& list = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for (std::size_t u = 0; u < adj_.size(); ++u)
    for (Vertex v : adj_[u])
      if (static_cast<Vertex>(u) < v) out.emplace_back(static_cast<Vertex>(u), v);
  return out;
}

std::span<const Vertex> Path::interior() const {
  if (vertices.size() <= 2) return {};
  return std::span<const Vertex>(vertices).subspan(1, vertices.size() - 2);
}

bool is_simple_path(const Graph& g, const Path& p) {
  if (p.vertices.empty()) return false;
  std::vector<Vertex> sorted = p.vertices;
  for (Vertex v : sorted)
    if (!g.valid(v)) return false;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
    if (!g.has_edge(p.vertices[i], p.vertices[i + 1])) return false;
  return true;
}

Path join(const Path& a, const Path& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.back() != b.front()) throw std::invalid_argument("join: paths do not meet");
  Path out = a;
  out.vertices.insert(out.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
  return out;
}

DegreeStats degree_stats(const Graph& g) {
  DegreeStats s;
  s.vertices = static_cast<std::int64_t>(g.size());
  s.twice_edges = 2 * static_cast<std::int64_t>(g.edge_count());
  if (g.empty()) return s;
  s.minimum = g.degree(0);
  s.maximum = g.degree(0);
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) {
    s.minimum = std::min(s.minimum, g.degree(v));
    s.maximum = std::max(s.maximum, g.degree(v));
  }
  return s;
}

bool average_at_least(const DegreeStats& a, const DegreeStats& b, std::int64_t num,
                      std::int64_t den) {
  // a.tw / a.n >= (b.tw / b.n) * num / den, with empty graphs averaging 0.
  if (b.vertices == 0 || b.twice_edges == 0 || num == 0) return true;
  if (a.vertices == 0) return false;
  return static_cast<__int128>(a.twice_edges) * b.vertices * den >=
         static_cast<__int128>(b.twice_edges) * a.vertices * num;
}

std::optional<Bipartition> bipartition(const Graph& g) {
  Bipartition side(g.size(), -1);
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < static_cast<Vertex>(g.size()); ++s) {
    if (side[static_cast<std::size_t>(s)] >= 0) continue;
    side[static_cast<std::size_t>(s)] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbors(u)) {
        auto& sw = side[static_cast<std::size_t>(w)];
        if (sw < 0) {
          sw = static_cast<std::int8_t>(1 - side[static_cast<std::size_t>(u)]);
          queue.push_back(w);
        } else if (sw == side[static_cast<std::size_t>(u)]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

std::vector<int> components(const Graph& g) {
  std::vector<int> comp(g.size(), -1);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < static_cast<Vertex>(g.size()); ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    comp[static_cast<std::size_t>(s)] = s;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(u))
        if (comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = s;
          stack.push_back(w);
        }
    }
  }
  return comp;
}

std::vector<int> bfs_distances(const Graph& g, std::span<const Vertex> sources,
                               const VertexMask* avoid, int max_depth) {
  std::vector<int> dist(g.size(), kUnreachable);
  std::vector<Vertex> frontier;
  for (Vertex s : sources) {
    if (avoid && avoid->contains(s)) continue;
    if (dist[static_cast<std::size_t>(s)] == kUnreachable) {
      dist[static_cast<std::size_t>(s)] = 0;
      frontier.push_back(s);
    }
  }
  std::vector<Vertex> next;
  for (int depth = 0; !frontier.empty() && (max_depth < 0 || depth < max_depth); ++depth) {
    next.clear();
    for (Vertex u : frontier)
      for (Vertex w : g.neighbors(u)) {
        if (dist[static_cast<std::size_t>(w)] != kUnreachable) continue;
        if (avoid && avoid->contains(w)) continue;
        dist[static_cast<std::size_t>(w)] = depth + 1;
        next.push_back(w);
      }
    frontier.swap(next);
  }
  return dist;
}

VertexSet ball(const Graph& g, std::span<const Vertex> sources, int radius,
               const VertexMask& avoid) {
  if (radius < 0) throw std::invalid_argument("ball: negative radius");
  for (Vertex s : sources) {
    if (!g.valid(s)) throw std::invalid_argument("ball: source out of range");
    if (avoid.universe() && avoid.contains(s))
      throw std::invalid_argument("ball: source vertex " + std::to_string(s) + " is avoided");
  }
  const auto dist = bfs_distances(g, sources, avoid.universe() ? &avoid : nullptr, radius);
  VertexSet out;
  for (std::size_t v = 0; v < dist.size(); ++v)
    if (dist[v] != kUnreachable) out.push_back(static_cast<Vertex>(v));
  return out;
}

VertexSet ball(const Graph& g, std::span<const Vertex> sources, int radius) {
  return ball(g, sources, radius, VertexMask{});
}

int pi(const Graph& g, Vertex u, Vertex v) {
  if (!g.valid(u) || !g.valid(v)) throw std::invalid_argument("pi: vertex out of range");
  const auto sides = bipartition(g);
  if (!sides) throw std::invalid_argument("pi: graph is not bipartite");
  const auto comp = components(g);
  if (std::any_of(comp.begin(), comp.end(), [](int c) { return c != 0; }))
    throw std::invalid_argument("pi: graph is not connected");
  return pi(*sides, u, v);
}

std::optional<Path> shortest_cycle(const Graph& g) { return shortest_cycle(g, VertexMask{}); }

std::optional<Path> shortest_cycle(const Graph& g, const VertexMask& avoid_in) {
  const VertexMask avoid = avoid_in.universe() ? avoid_in : VertexMask(g.size());
  const int len = kernels::girth(g, avoid);
  if (len == 0) return std::nullopt;

  // On a shortest cycle c0..c_{len-1}, graph distance from c0 to c_i equals
  // min(i, len - i); that pins down every step of the search.
  for (Vertex s = 0; s < static_cast<Vertex>(g.size()); ++s) {
    if (avoid.contains(s)) continue;
    VertexMask low = avoid;
    for (Vertex v = 0; v < s; ++v) low.insert(v);
    const Vertex start[] = {s};
    const auto dist = bfs_distances(g, start, &low, len / 2);

    std::vector<Vertex> seq{s};
    std::vector<std::uint8_t> used(g.size(), 0);
    used[static_cast<std::size_t>(s)] = 1;
    std::function<bool()> extend = [&]() -> bool {
      const int i = static_cast<int>(seq.size()) - 1;
      const Vertex u = seq.back();
      if (static_cast<int>(seq.size()) == len) return g.has_edge(u, s);
      const int want = std::min(i + 1, len - i - 1);
      for (Vertex w : g.neighbors(u)) {
        if (w <= s || used[static_cast<std::size_t>(w)]) continue;
        if (dist[static_cast<std::size_t>(w)] != want) continue;
        used[static_cast<std::size_t>(w)] = 1;
        seq.push_back(w);
        if (extend()) return true;
        seq.pop_back();
        used[static_cast<std::size_t>(w)] = 0;
      }
      return false;
    };
    if (extend()) return Path{seq};
  }
  return std::nullopt;  // unreachable when girth > 0
}

Path path_prefix(const Path& p, Vertex v, int r) {
  if (p.empty()) throw std::invalid_argument("path_prefix: empty path");
  if (r < 0 || r > p.length()) throw std::invalid_argument("path_prefix: length out of range");
  if (p.front() == v) return Path{{p.vertices.begin(), p.vertices.begin() + r + 1}};
  if (p.back() == v) {
    Path out;
    for (int i = 0; i <= r; ++i) out.vertices.push_back(p.vertices[p.vertices.size() - 1 - i]);
    return out;
  }
  throw std::invalid_argument("path_prefix: vertex is not an endpoint");
}

Path Subgraph::lift(const Path& p) const {
  Path out;
  out.vertices.reserve(p.vertices.size());
  for (Vertex v : p.vertices) out.vertices.push_back(parent(v));
  return out;
}

VertexSet Subgraph::lift(const VertexSet& s) const {
  std::vector<Vertex> out;
  for (Vertex v : s) out.push_back(parent(v));
  return make_set(std::move(out));
}

Subgraph induced_subgraph(const Graph& g, const VertexSet& keep_in) {
  const VertexSet keep = make_set(keep_in);
  std::vector<Vertex> local(g.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) local[static_cast<std::size_t>(keep[i])] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (Vertex u : keep)
    for (Vertex w : g.neighbors(u))
      if (u < w && local[static_cast<std::size_t>(w)] >= 0)
        edges.emplace_back(local[static_cast<std::size_t>(u)], local[static_cast<std::size_t>(w)]);
  return Subgraph{Graph::from_edges(keep.size(), edges), keep};
}

}  // namespace tksub
