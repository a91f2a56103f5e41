#include "tksub/kernels.hpp"

#include <atomic>
#include <bit>
#include <climits>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tksub::kernels {

namespace {

constexpr int kNoCycle = INT_MAX;

// Shortest closed walk through a BFS tree rooted at s that is shorter than
// `bound`; minimizing this over all roots gives the girth.
struct GirthWorkspace {
  std::vector<int> dist;
  std::vector<Vertex> parent;
  std::vector<Vertex> touched;
  std::vector<Vertex> queue;

  explicit GirthWorkspace(std::size_t n) : dist(n, -1), parent(n, -1) {}

  int from(const Graph& g, const VertexMask& avoid, Vertex s, int bound) {
    int best = bound;
    queue.clear();
    queue.push_back(s);
    dist[static_cast<std::size_t>(s)] = 0;
    touched.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      const int du = dist[static_cast<std::size_t>(u)];
      if (2 * du + 1 >= best) break;
      for (Vertex w : g.neighbors(u)) {
        if (avoid.contains(w)) continue;
        const auto wi = static_cast<std::size_t>(w);
        if (dist[wi] < 0) {
          dist[wi] = du + 1;
          parent[wi] = u;
          touched.push_back(w);
          queue.push_back(w);
        } else if (parent[static_cast<std::size_t>(u)] != w) {
          best = std::min(best, du + dist[wi] + 1);
        }
      }
    }
    for (Vertex v : touched) {
      dist[static_cast<std::size_t>(v)] = -1;
      parent[static_cast<std::size_t>(v)] = -1;
    }
    touched.clear();
    return best;
  }
};

std::vector<int> distances_from(const Graph& g, Vertex s) {
  const Vertex src[] = {s};
  return bfs_distances(g, src, nullptr, -1);
}

bool subset_violates(std::span<const std::uint32_t> nbr, std::uint32_t mask, int lo, int hi,
                     std::span<const double> limit, bool& in_range) {
  const int size = std::popcount(mask);
  in_range = size >= lo && size <= hi;
  if (!in_range) return false;
  std::uint32_t reach = 0;
  for (std::uint32_t rest = mask; rest; rest &= rest - 1)
    reach |= nbr[static_cast<std::size_t>(std::countr_zero(rest))];
  const int boundary = std::popcount(reach & ~mask);
  return boundary < limit[static_cast<std::size_t>(size)];
}

// Ball and sphere checks around one root, stopping at the first violation.
struct RootScan {
  std::uint64_t checked = 0;
  std::optional<VertexSet> violation;
};

RootScan scan_root(const Graph& g, Vertex root, int lo, int hi, std::span<const double> limit) {
  RootScan out;
  std::vector<int> dist(g.size(), -1);
  std::vector<Vertex> ball_list{root};
  std::vector<Vertex> layer{root};
  dist[static_cast<std::size_t>(root)] = 0;
  VertexMask in_layer(g.size());
  for (int r = 0; !layer.empty(); ++r) {
    std::vector<Vertex> next;
    for (Vertex u : layer)
      for (Vertex w : g.neighbors(u))
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = r + 1;
          next.push_back(w);
        }
    // N(B^r) is exactly the next layer.
    const int bsize = static_cast<int>(ball_list.size());
    if (bsize > hi) break;
    if (bsize >= lo) {
      ++out.checked;
      if (static_cast<double>(next.size()) < limit[static_cast<std::size_t>(bsize)]) {
        out.violation = make_set(ball_list);
        return out;
      }
    }
    const int lsize = static_cast<int>(layer.size());
    if (r > 0 && lsize >= lo && lsize <= hi) {
      ++out.checked;
      for (Vertex v : layer) in_layer.insert(v);
      std::vector<Vertex> nb;
      for (Vertex u : layer)
        for (Vertex w : g.neighbors(u))
          if (!in_layer.contains(w)) nb.push_back(w);
      const auto boundary = make_set(std::move(nb)).size();
      for (Vertex v : layer) in_layer.erase(v);
      if (static_cast<double>(boundary) < limit[static_cast<std::size_t>(lsize)]) {
        out.violation = make_set(layer);
        return out;
      }
    }
    ball_list.insert(ball_list.end(), next.begin(), next.end());
    layer.swap(next);
  }
  return out;
}

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 1; --i) {  // position 0 is pinned by the caller
    if (c[static_cast<std::size_t>(i)] < n - k + i) {
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

std::optional<std::vector<int>> first_with_head(
    int n, int k, int head, const std::function<bool(std::span<const int>)>& accept,
    const std::atomic<int>* stop_above) {
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = head + i;
  do {
    if (stop_above && stop_above->load(std::memory_order_relaxed) < head) return std::nullopt;
    if (accept(c)) return c;
  } while (next_combination(c, n));
  return std::nullopt;
}

}  // namespace

int boundary_size(const Graph& g, const VertexMask& members, std::span<const Vertex> list) {
  std::vector<Vertex> nb;
  for (Vertex u : list)
    for (Vertex w : g.neighbors(u))
      if (!members.contains(w)) nb.push_back(w);
  return static_cast<int>(make_set(std::move(nb)).size());
}

int girth(const Graph& g, const VertexMask& avoid_in) {
  const VertexMask avoid = avoid_in.universe() ? avoid_in : VertexMask(g.size());
  const int n = static_cast<int>(g.size());
  int best = kNoCycle;
#pragma omp parallel reduction(min : best)
  {
    GirthWorkspace ws(g.size());
#pragma omp for schedule(dynamic, 32)
    for (int s = 0; s < n; ++s) {
      if (avoid.contains(s)) continue;
      best = std::min(best, ws.from(g, avoid, s, best));
    }
  }
  return best == kNoCycle ? 0 : best;
}

std::vector<std::vector<int>> distance_matrix(const Graph& g) {
  const int n = static_cast<int>(g.size());
  std::vector<std::vector<int>> out(g.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (int s = 0; s < n; ++s) out[static_cast<std::size_t>(s)] = distances_from(g, s);
  return out;
}

SubsetScan scan_subsets(std::span<const std::uint32_t> nbr, int lo, int hi,
                        std::span<const double> limit) {
  const int n = static_cast<int>(nbr.size());
  const std::int64_t total = std::int64_t{1} << n;
  std::uint64_t checked = 0;
  std::int64_t first = total;
#pragma omp parallel for schedule(static, 4096) reduction(+ : checked) reduction(min : first)
  for (std::int64_t m = 1; m < total; ++m) {
    bool in_range = false;
    if (subset_violates(nbr, static_cast<std::uint32_t>(m), lo, hi, limit, in_range))
      first = std::min(first, m);
    if (in_range) ++checked;
  }
  SubsetScan out;
  out.checked = checked;
  if (first < total) out.violation = static_cast<std::uint32_t>(first);
  return out;
}

BallScan scan_balls(const Graph& g, std::span<const Vertex> roots, int lo, int hi,
                    std::span<const double> limit) {
  const int count = static_cast<int>(roots.size());
  std::vector<RootScan> per(roots.size());
  std::atomic<int> first_hit{count};
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < count; ++i) {
    if (first_hit.load(std::memory_order_relaxed) < i) continue;
    per[static_cast<std::size_t>(i)] = scan_root(g, roots[static_cast<std::size_t>(i)], lo, hi, limit);
    if (per[static_cast<std::size_t>(i)].violation) {
      int cur = first_hit.load();
      while (i < cur && !first_hit.compare_exchange_weak(cur, i)) {
      }
    }
  }
  BallScan out;
  const int stop = first_hit.load();
  for (int i = 0; i < count && i <= stop; ++i) {
    out.checked += per[static_cast<std::size_t>(i)].checked;
    if (i == stop) out.violation = per[static_cast<std::size_t>(i)].violation;
  }
  return out;
}

std::optional<std::vector<int>> first_combination(
    int n, int k, const std::function<bool(std::span<const int>)>& accept) {
  if (k <= 0 || k > n) return k == 0 ? std::optional<std::vector<int>>(std::vector<int>{}) : std::nullopt;
  const int heads = n - k + 1;
  std::vector<std::optional<std::vector<int>>> found(static_cast<std::size_t>(heads));
  std::atomic<int> best{INT_MAX};
#pragma omp parallel for schedule(dynamic, 1)
  for (int h = 0; h < heads; ++h) {
    if (best.load(std::memory_order_relaxed) < h) continue;
    found[static_cast<std::size_t>(h)] = first_with_head(n, k, h, accept, &best);
    if (found[static_cast<std::size_t>(h)]) {
      int cur = best.load();
      while (h < cur && !best.compare_exchange_weak(cur, h)) {
      }
    }
  }
  const int h = best.load();
  if (h == INT_MAX) return std::nullopt;
  return found[static_cast<std::size_t>(h)];
}

namespace serial {

int girth(const Graph& g, const VertexMask& avoid_in) {
  const VertexMask avoid = avoid_in.universe() ? avoid_in : VertexMask(g.size());
  GirthWorkspace ws(g.size());
  int best = kNoCycle;
  for (Vertex s = 0; s < static_cast<Vertex>(g.size()); ++s)
    if (!avoid.contains(s)) best = std::min(best, ws.from(g, avoid, s, best));
  return best == kNoCycle ? 0 : best;
}

std::vector<std::vector<int>> distance_matrix(const Graph& g) {
  std::vector<std::vector<int>> out;
  for (Vertex s = 0; s < static_cast<Vertex>(g.size()); ++s) out.push_back(distances_from(g, s));
  return out;
}

SubsetScan scan_subsets(std::span<const std::uint32_t> nbr, int lo, int hi,
                        std::span<const double> limit) {
  const std::int64_t total = std::int64_t{1} << nbr.size();
  SubsetScan out;
  for (std::int64_t m = 1; m < total; ++m) {
    bool in_range = false;
    const bool bad = subset_violates(nbr, static_cast<std::uint32_t>(m), lo, hi, limit, in_range);
    if (in_range) ++out.checked;
    if (bad && !out.violation) out.violation = static_cast<std::uint32_t>(m);
  }
  return out;
}

BallScan scan_balls(const Graph& g, std::span<const Vertex> roots, int lo, int hi,
                    std::span<const double> limit) {
  BallScan out;
  for (Vertex r : roots) {
    auto one = scan_root(g, r, lo, hi, limit);
    out.checked += one.checked;
    if (one.violation) {
      out.violation = std::move(one.violation);
      break;
    }
  }
  return out;
}

std::optional<std::vector<int>> first_combination(
    int n, int k, const std::function<bool(std::span<const int>)>& accept) {
  if (k <= 0 || k > n) return k == 0 ? std::optional<std::vector<int>>(std::vector<int>{}) : std::nullopt;
  for (int h = 0; h + k <= n; ++h)
    if (auto c = first_with_head(n, k, h, accept, nullptr)) return c;
  return std::nullopt;
}

}  // namespace serial

}  // namespace tksub::kernels
