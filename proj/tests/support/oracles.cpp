#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tksub::oracle {

Graph make(std::size_t n, std::vector<Edge> edges) { return Graph::from_edges(n, edges); }

Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return make(static_cast<std::size_t>(n), e);
}

Graph path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return make(static_cast<std::size_t>(n), e);
}

Graph complete(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return make(static_cast<std::size_t>(n), e);
}

Graph complete_bipartite(int a, int b) {
  std::vector<Edge> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return make(static_cast<std::size_t>(a + b), e);
}

int girth(const Graph& g) {
  int best = 0;
  for (const auto& [u, v] : g.edges()) {
    std::vector<int> dist(g.size(), -1);
    std::deque<Vertex> q{u};
    dist[static_cast<std::size_t>(u)] = 0;
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop_front();
      for (Vertex y : g.neighbors(x)) {
        if ((x == u && y == v) || (x == v && y == u)) continue;
        if (dist[static_cast<std::size_t>(y)] < 0) {
          dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
          q.push_back(y);
        }
      }
    }
    const int d = dist[static_cast<std::size_t>(v)];
    if (d >= 0 && (best == 0 || d + 1 < best)) best = d + 1;
  }
  return best;
}

std::vector<std::vector<int>> all_distances(const Graph& g, const VertexSet& removed) {
  const std::size_t n = g.size();
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  auto gone = [&](std::size_t v) { return std::binary_search(removed.begin(), removed.end(), static_cast<Vertex>(v)); };
  for (std::size_t v = 0; v < n; ++v) {
    if (gone(v)) continue;
    d[v][v] = 0;
    for (Vertex w : g.neighbors(static_cast<Vertex>(v)))
      if (!gone(static_cast<std::size_t>(w))) d[v][static_cast<std::size_t>(w)] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (int& x : row)
      if (x >= inf) x = -1;
  return d;
}

namespace {
bool dfs(const Graph& g, Vertex at, Vertex t, int left, std::vector<char>& used) {
  if (at == t) return left == 0;
  if (left == 0) return false;
  for (Vertex w : g.neighbors(at)) {
    if (used[static_cast<std::size_t>(w)]) continue;
    used[static_cast<std::size_t>(w)] = 1;
    const bool ok = dfs(g, w, t, left - 1, used);
    used[static_cast<std::size_t>(w)] = 0;
    if (ok) return true;
  }
  return false;
}
}  // namespace

bool has_path_of_length(const Graph& g, Vertex s, Vertex t, int length, const VertexSet& blocked) {
  std::vector<char> used(g.size(), 0);
  for (Vertex b : blocked) used[static_cast<std::size_t>(b)] = 1;
  if (used[static_cast<std::size_t>(s)] || used[static_cast<std::size_t>(t)]) return false;
  used[static_cast<std::size_t>(s)] = 1;
  return dfs(g, s, t, length, used);
}

std::uint64_t canonical_code(const Graph& g) {
  const int n = static_cast<int>(g.size());
  if (n > 8) throw std::invalid_argument("canonical_code: n > 8");
  // Colour refinement gives an invariant ordered partition; the code is the
  // largest adjacency word over orderings that respect it.
  std::vector<int> color(static_cast<std::size_t>(n), 0);
  for (int round = 0; round < n; ++round) {
    std::vector<std::pair<std::vector<int>, int>> sig(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      std::vector<int> s{color[static_cast<std::size_t>(v)]};
      std::vector<int> nb;
      for (Vertex w : g.neighbors(v)) nb.push_back(color[static_cast<std::size_t>(w)]);
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      sig[static_cast<std::size_t>(v)] = {s, v};
    }
    std::vector<std::vector<int>> keys;
    for (auto& s : sig) keys.push_back(s.first);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<int> next(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      next[static_cast<std::size_t>(v)] = static_cast<int>(
          std::lower_bound(keys.begin(), keys.end(), sig[static_cast<std::size_t>(v)].first) - keys.begin());
    if (next == color) break;
    color = next;
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return color[static_cast<std::size_t>(a)] != color[static_cast<std::size_t>(b)]
               ? color[static_cast<std::size_t>(a)] < color[static_cast<std::size_t>(b)]
               : a < b;
  });
  // Cell boundaries.
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && color[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] ==
                        color[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])])
      ++j;
    cells.emplace_back(i, j);
    i = j;
  }
  std::uint64_t best = 0;
  bool first = true;
  std::vector<int> perm = order;
  // Iterate over the product of permutations inside every cell.
  for (auto& [a, b] : cells) std::sort(perm.begin() + a, perm.begin() + b);
  while (true) {
    std::uint64_t code = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        code = code << 1 | (g.has_edge(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) ? 1 : 0);
    if (first || code > best) best = code;
    first = false;
    int c = static_cast<int>(cells.size()) - 1;
    for (; c >= 0; --c) {
      auto [a, b] = cells[static_cast<std::size_t>(c)];
      if (std::next_permutation(perm.begin() + a, perm.begin() + b)) break;
    }
    if (c < 0) break;
  }
  return best;
}

std::vector<Graph> all_graphs(int n, bool connected_only) {
  if (n < 1 || n > 8) throw std::invalid_argument("all_graphs: 1 <= n <= 8");
  std::vector<Graph> level{Graph(1)};
  for (int size = 2; size <= n; ++size) {
    std::set<std::uint64_t> seen;
    std::vector<Graph> next;
    for (const Graph& base : level) {
      const auto edges = base.edges();
      for (std::uint32_t mask = connected_only ? 1 : 0; mask < (1u << (size - 1)); ++mask) {
        auto e = edges;
        for (int v = 0; v < size - 1; ++v)
          if (mask >> v & 1) e.emplace_back(v, size - 1);
        Graph g = make(static_cast<std::size_t>(size), e);
        if (seen.insert(canonical_code(g)).second) next.push_back(std::move(g));
      }
    }
    level = std::move(next);
  }
  return level;
}

bool violates(const Graph& g, const VertexSet& x, double eps1, double k) {
  const double s = static_cast<double>(x.size());
  if (s < k / 2 || s > static_cast<double>(g.size()) / 2) return false;
  std::set<Vertex> nb;
  for (Vertex v : x)
    for (Vertex w : g.neighbors(v))
      if (!std::binary_search(x.begin(), x.end(), w)) nb.insert(w);
  const double rate = s < k / 5 ? 0.0 : eps1 / std::pow(std::log(15.0 * s / k), 2);
  return static_cast<double>(nb.size()) < rate * s;
}

bool expands_exhaustive(const Graph& g, double eps1, double k) {
  const int n = static_cast<int>(g.size());
  if (n > 20) throw std::invalid_argument("expands_exhaustive: n > 20");
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    VertexSet x;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) x.push_back(v);
    if (violates(g, x, eps1, k)) return false;
  }
  return true;
}

}  // namespace tksub::oracle
