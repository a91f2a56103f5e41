#include "tksub/verify.hpp"

#include <atomic>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tksub/kernels.hpp"

namespace tksub {

SubdivisionCertificate SubdivisionCertificate::lifted(const std::vector<Vertex>& to_parent) const {
  SubdivisionCertificate out;
  out.ell = ell;
  for (Vertex v : cores) out.cores.push_back(to_parent[static_cast<std::size_t>(v)]);
  for (const auto& [key, p] : paths) {
    Path q;
    for (Vertex v : p.vertices) q.vertices.push_back(to_parent[static_cast<std::size_t>(v)]);
    out.paths.emplace(key, std::move(q));
  }
  return out;
}

namespace {

std::string pair_name(const std::pair<int, int>& key) {
  return "pair (" + std::to_string(key.first) + "," + std::to_string(key.second) + ")";
}

}  // namespace

Verdict verify_subdivision(const Graph& g, const SubdivisionCertificate& cert) {
  const int k = cert.k();
  // (a)
  for (Vertex c : cert.cores)
    if (!g.valid(c)) return Verdict::fail("a", "core " + std::to_string(c) + " out of range");
  if (make_set(cert.cores).size() != cert.cores.size()) return Verdict::fail("a", "repeated core vertex");
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (!cert.paths.count({i, j})) return Verdict::fail("a", pair_name({i, j}) + " has no path");
  for (const auto& [key, p] : cert.paths)
    if (key.first < 0 || key.first >= key.second || key.second >= k)
      return Verdict::fail("a", pair_name(key) + " is not a pair of cores");
  // (b)
  for (const auto& [key, p] : cert.paths) {
    const Vertex a = cert.cores[static_cast<std::size_t>(key.first)];
    const Vertex b = cert.cores[static_cast<std::size_t>(key.second)];
    if (p.empty() || !((p.front() == a && p.back() == b) || (p.front() == b && p.back() == a)))
      return Verdict::fail("b", pair_name(key) + " does not join its cores");
  }
  // (c)
  for (const auto& [key, p] : cert.paths)
    for (std::size_t t = 0; t + 1 < p.vertices.size(); ++t)
      if (!g.has_edge(p.vertices[t], p.vertices[t + 1]))
        return Verdict::fail("c", pair_name(key) + " uses non-edge " + std::to_string(p.vertices[t]) + "-" +
                                      std::to_string(p.vertices[t + 1]));
  // (d)
  for (const auto& [key, p] : cert.paths)
    if (p.length() != cert.ell)
      return Verdict::fail("d", pair_name(key) + " has length " + std::to_string(p.length()) + " != ell = " +
                                    std::to_string(cert.ell));
  // (e)
  std::map<Vertex, std::pair<int, int>> owner;
  const VertexSet cores = make_set(cert.cores);
  for (const auto& [key, p] : cert.paths) {
    if (make_set(p.vertices).size() != p.vertices.size())
      return Verdict::fail("e", pair_name(key) + " repeats a vertex");
    for (Vertex v : p.interior()) {
      if (set_contains(cores, v))
        return Verdict::fail("e", pair_name(key) + " passes through core " + std::to_string(v));
      auto [it, fresh] = owner.emplace(v, key);
      if (!fresh)
        return Verdict::fail("e", pair_name(key) + " shares interior vertex " + std::to_string(v) + " with " +
                                      pair_name(it->second));
    }
  }
  return Verdict::pass();
}

void write_certificate(std::ostream& out, const SubdivisionCertificate& cert) {
  out << "tkcert k=" << cert.k() << " ell=" << cert.ell << "\n";
  out << "cores:";
  for (Vertex c : cert.cores) out << ' ' << c;
  out << "\n";
  for (const auto& [key, p] : cert.paths) {
    out << "path " << key.first << ' ' << key.second << ':';
    for (Vertex v : p.vertices) out << ' ' << v;
    out << "\n";
  }
}

SubdivisionCertificate read_certificate(std::istream& in) {
  SubdivisionCertificate cert;
  std::string line;
  int lineno = 0;
  int declared_k = -1;
  bool have_cores = false;
  auto fail = [&](const std::string& why) -> std::runtime_error {
    return std::runtime_error("certificate line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (declared_k < 0) {
      std::string kf, lf;
      if (word != "tkcert" || !(ls >> kf >> lf) || kf.rfind("k=", 0) != 0 || lf.rfind("ell=", 0) != 0)
        throw fail("expected header 'tkcert k=<k> ell=<ell>'");
      try {
        declared_k = std::stoi(kf.substr(2));
        cert.ell = std::stoi(lf.substr(4));
      } catch (const std::exception&) {
        throw fail("bad number in header");
      }
      if (declared_k < 0) throw fail("negative k");
    } else if (word == "cores:") {
      if (have_cores) throw fail("duplicate cores line");
      Vertex v;
      while (ls >> v) cert.cores.push_back(v);
      if (!ls.eof()) throw fail("bad core id");
      if (cert.k() != declared_k) throw fail("cores line lists " + std::to_string(cert.k()) + " vertices");
      have_cores = true;
    } else if (word == "path") {
      if (!have_cores) throw fail("path before cores line");
      int i, j;
      std::string colon;
      if (!(ls >> i >> j >> colon) || colon != ":") throw fail("expected 'path <i> <j>: ...'");
      Path p;
      Vertex v;
      while (ls >> v) p.vertices.push_back(v);
      if (!ls.eof()) throw fail("bad vertex id");
      if (!cert.paths.emplace(std::pair{i, j}, std::move(p)).second) throw fail("duplicate pair");
    } else {
      throw fail("unexpected '" + word + "'");
    }
  }
  if (declared_k < 0) throw std::runtime_error("certificate: missing header");
  if (!have_cores) throw std::runtime_error("certificate: missing cores line");
  return cert;
}

void save_certificate(const std::filesystem::path& file, const SubdivisionCertificate& cert) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  write_certificate(out, cert);
}

SubdivisionCertificate load_certificate(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  return read_certificate(in);
}

namespace {

// Exhaustive search for internally disjoint uniform-length path systems.
class PathSystemSearch {
 public:
  PathSystemSearch(const Graph& g, int ell, std::uint64_t max_nodes, std::atomic<std::uint64_t>& nodes,
                   std::atomic<bool>& over)
      : g_(g), ell_(ell), max_nodes_(max_nodes), nodes_(nodes), over_(over), sides_(bipartition(g)) {}

  // True if the cores carry a TK^(ell); fills `paths` when non-null.
  bool exists(std::span<const Vertex> cores, std::map<std::pair<int, int>, Path>* paths) const {
    State st(g_.size());
    for (Vertex c : cores) st.used[static_cast<std::size_t>(c)] = 1;
    for (int i = 0; i < static_cast<int>(cores.size()); ++i)
      for (int j = i + 1; j < static_cast<int>(cores.size()); ++j) st.pairs.emplace_back(i, j);
    st.cores.assign(cores.begin(), cores.end());
    const bool found = pair_step(st, 0);
    flush(st);
    if (found && paths) {
      paths->clear();
      for (std::size_t p = 0; p < st.pairs.size(); ++p) paths->emplace(st.pairs[p], st.chosen[p]);
    }
    return found;
  }

 private:
  struct State {
    explicit State(std::size_t n) : used(n, 0) {}
    std::vector<std::uint8_t> used;
    std::vector<std::pair<int, int>> pairs;
    std::vector<Vertex> cores;
    std::vector<Path> chosen;
    std::vector<Vertex> walk;
    std::uint64_t local = 0;
  };

  void flush(State& st) const {
    if (st.local == 0) return;
    if (nodes_.fetch_add(st.local) + st.local > max_nodes_) over_ = true;
    st.local = 0;
  }

  bool pair_step(State& st, std::size_t p) const {
    if (p == st.pairs.size()) return true;
    const Vertex a = st.cores[static_cast<std::size_t>(st.pairs[p].first)];
    const Vertex b = st.cores[static_cast<std::size_t>(st.pairs[p].second)];
    // Distances to b through unused vertices.
    std::vector<int> dist(g_.size(), kUnreachable);
    std::vector<Vertex> queue{b};
    dist[static_cast<std::size_t>(b)] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const Vertex u = queue[h];
      if (dist[static_cast<std::size_t>(u)] >= ell_) break;
      for (Vertex w : g_.neighbors(u)) {
        const auto wi = static_cast<std::size_t>(w);
        if (dist[wi] != kUnreachable || (st.used[wi] && w != a)) continue;
        dist[wi] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(w);
      }
    }
    if (dist[static_cast<std::size_t>(a)] == kUnreachable) return false;
    st.walk.assign(1, a);
    return walk_step(st, p, a, b, ell_, dist);
  }

  bool walk_step(State& st, std::size_t p, Vertex u, Vertex b, int rem, const std::vector<int>& dist) const {
    if (++st.local >= 4096) flush(st);
    if (over_.load(std::memory_order_relaxed)) return false;
    const int du = dist[static_cast<std::size_t>(u)];
    if (du == kUnreachable || du > rem) return false;
    if (sides_ && (rem - du) % 2 != 0) return false;
    if (rem == 1) {
      if (!g_.has_edge(u, b)) return false;
      st.walk.push_back(b);
      st.chosen.push_back(Path{st.walk});
      const std::vector<Vertex> saved = st.walk;
      if (pair_step(st, p + 1)) return true;
      st.walk = saved;
      st.chosen.pop_back();
      st.walk.pop_back();
      return false;
    }
    for (Vertex w : g_.neighbors(u)) {
      const auto wi = static_cast<std::size_t>(w);
      if (st.used[wi]) continue;
      st.used[wi] = 1;
      st.walk.push_back(w);
      if (walk_step(st, p, w, b, rem - 1, dist)) return true;
      st.walk.pop_back();
      st.used[wi] = 0;
    }
    return false;
  }

  const Graph& g_;
  int ell_;
  std::uint64_t max_nodes_;
  std::atomic<std::uint64_t>& nodes_;
  std::atomic<bool>& over_;
  std::optional<Bipartition> sides_;
};

long long pairs_of(long long k) { return k * (k - 1) / 2; }

struct Oracle {
  const Graph& g;
  const OracleLimits& limits;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> over{false};
  std::vector<int> comp = components(g);
  std::optional<Bipartition> sides = bipartition(g);
  std::vector<int> comp_size = [&] {
    std::vector<int> s(g.size(), 0);
    for (int c : comp) ++s[static_cast<std::size_t>(c)];
    return s;
  }();
  std::vector<std::array<int, 2>> side_count = [&] {
    std::vector<std::array<int, 2>> s(g.size(), {0, 0});
    if (sides)
      for (std::size_t v = 0; v < g.size(); ++v) ++s[static_cast<std::size_t>(comp[v])][(*sides)[v]];
    return s;
  }();

  Oracle(const Graph& graph, const OracleLimits& lim) : g(graph), limits(lim) {}

  // Cheap necessary conditions on a core set.
  bool plausible(std::span<const Vertex> cores, int ell) const {
    const long long k = static_cast<long long>(cores.size());
    const int c0 = comp[static_cast<std::size_t>(cores[0])];
    for (Vertex c : cores) {
      if (g.degree(c) < k - 1) return false;
      if (comp[static_cast<std::size_t>(c)] != c0) return false;
    }
    if (k + pairs_of(k) * (ell - 1) > comp_size[static_cast<std::size_t>(c0)]) return false;
    if (sides && k >= 2) {
      const int s0 = (*sides)[static_cast<std::size_t>(cores[0])];
      if (ell % 2 == 1) {
        if (k > 2) return false;
        if ((*sides)[static_cast<std::size_t>(cores[1])] == s0) return false;
      } else {
        for (Vertex c : cores)
          if ((*sides)[static_cast<std::size_t>(c)] != s0) return false;
        const auto& cnt = side_count[static_cast<std::size_t>(c0)];
        if (k + pairs_of(k) * (ell / 2 - 1) > cnt[s0]) return false;
        if (pairs_of(k) * (ell / 2) > cnt[1 - s0]) return false;
      }
    }
    return true;
  }

  int k_upper(int ell) const {
    int best = 0;
    for (std::size_t v = 0; v < g.size(); ++v) best = std::max(best, g.degree(static_cast<Vertex>(v)) + 1);
    int k = 1;
    while (k + 1 <= best && (k + 1) + pairs_of(k + 1) * (ell - 1) <= static_cast<long long>(g.size())) ++k;
    return k;
  }

  // Some k-core set carrying a TK^(ell)_k, lexicographically first by id.
  std::optional<SubdivisionCertificate> find(int k, int ell) {
    PathSystemSearch search(g, ell, limits.max_nodes, nodes, over);
    std::vector<Vertex> cand;
    for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
      if (g.degree(v) >= k - 1) cand.push_back(v);
    if (static_cast<int>(cand.size()) < k) return std::nullopt;

    // Failing triples rule out every superset; tabulated once per (k, ell).
    std::map<std::array<Vertex, 3>, bool> triple_ok;
    if (k >= 4) {
      const auto n = static_cast<int>(cand.size());
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          for (int c = b + 1; c < n; ++c) {
            const Vertex t[] = {cand[static_cast<std::size_t>(a)], cand[static_cast<std::size_t>(b)],
                                cand[static_cast<std::size_t>(c)]};
            triple_ok[{t[0], t[1], t[2]}] = plausible(t, ell) && search.exists(t, nullptr);
          }
    }
    auto accept = [&](std::span<const int> idx) {
      std::vector<Vertex> cores;
      for (int i : idx) cores.push_back(cand[static_cast<std::size_t>(i)]);
      if (!plausible(cores, ell)) return false;
      if (k >= 4)
        for (std::size_t a = 0; a < cores.size(); ++a)
          for (std::size_t b = a + 1; b < cores.size(); ++b)
            for (std::size_t c = b + 1; c < cores.size(); ++c)
              if (!triple_ok.at({cores[a], cores[b], cores[c]})) return false;
      return search.exists(cores, nullptr);
    };
    const auto hit = kernels::first_combination(static_cast<int>(cand.size()), k, accept);
    if (!hit) return std::nullopt;
    SubdivisionCertificate cert;
    cert.ell = ell;
    for (int i : *hit) cert.cores.push_back(cand[static_cast<std::size_t>(i)]);
    search.exists(cert.cores, &cert.paths);
    return cert;
  }
};

void check_limits(const Graph& g, const OracleLimits& limits) {
  if (static_cast<int>(g.size()) > limits.max_vertices)
    throw std::invalid_argument("oracle: graph has " + std::to_string(g.size()) + " vertices, cap is " +
                                std::to_string(limits.max_vertices));
}

}  // namespace

OracleResult oracle_max_subdivision(const Graph& g, int max_ell, const OracleLimits& limits) {
  check_limits(g, limits);
  if (max_ell < 1) throw std::invalid_argument("oracle: max_ell must be at least 1");
  OracleResult out;
  if (g.edge_count() == 0) {
    out.best_k = std::min<int>(static_cast<int>(g.size()), 1);
    if (out.best_k == 1) out.witness.cores = {0};
    return out;
  }
  const auto [u, v] = g.edges().front();
  out.best_k = 2;
  out.best_ell = 1;
  out.witness.ell = 1;
  out.witness.cores = {u, v};
  out.witness.paths[{0, 1}] = Path{{u, v}};

  Oracle oracle(g, limits);
  for (int ell = 1; ell <= max_ell && !oracle.over; ++ell) {
    for (int k = oracle.k_upper(ell); k > out.best_k && !oracle.over; --k) {
      if (auto cert = oracle.find(k, ell)) {
        out.best_k = k;
        out.best_ell = ell;
        out.witness = std::move(*cert);
        break;
      }
    }
  }
  out.nodes_explored = oracle.nodes.load();
  if (oracle.over) out.status = Status::BudgetExceeded;
  return out;
}

OracleResult oracle_max_k_at_ell(const Graph& g, int ell, const OracleLimits& limits) {
  check_limits(g, limits);
  if (ell < 1) throw std::invalid_argument("oracle: ell must be at least 1");
  OracleResult out;
  out.best_ell = ell;
  out.witness.ell = ell;
  out.best_k = g.empty() ? 0 : 1;
  if (!g.empty()) out.witness.cores = {0};
  Oracle oracle(g, limits);
  for (int k = oracle.k_upper(ell); k >= 2 && !oracle.over; --k) {
    if (auto cert = oracle.find(k, ell)) {
      out.best_k = k;
      out.witness = std::move(*cert);
      break;
    }
  }
  out.nodes_explored = oracle.nodes.load();
  if (oracle.over) out.status = Status::BudgetExceeded;
  return out;
}

}  // namespace tksub
