#include <catch_amalgamated.hpp>

#include <sstream>

#include "oracles.hpp"
#include "tksub/builder.hpp"
#include "tksub/harness.hpp"

using namespace tksub;

namespace {

BuildConfig config(int ell, int k) {
  BuildConfig cfg;
  cfg.ell = ell;
  cfg.target_k = k;
  return cfg;
}

std::string trace_text(const std::vector<TraceEntry>& t) {
  std::ostringstream o;
  write_trace(o, t);
  return o.str();
}

bool same_side(const Graph& g, const std::vector<Vertex>& cores) {
  const auto s = *bipartition(g);
  for (Vertex c : cores)
    if (s[static_cast<std::size_t>(c)] != s[static_cast<std::size_t>(cores.front())]) return false;
  return true;
}

}  // namespace

TEST_CASE("config validation") {
  BuildConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.ell = -1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = BuildConfig{};
  cfg.r1 = 3;
  cfg.r2 = 3;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = BuildConfig{};
  cfg.epsilon1 = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("far-apart cores") {
  auto p = select_far_apart_cores(oracle::path(10), 2, 5);
  CHECK(p.cores == std::vector<Vertex>{0, 5});
  CHECK(p.status == Status::Ok);
  auto q = select_far_apart_cores(oracle::path(10), 2, 5, 0);
  CHECK(q.cores == std::vector<Vertex>{0, 6});
  auto z = select_far_apart_cores(oracle::cycle(8), 3, 0);
  CHECK(z.cores == std::vector<Vertex>{0, 1, 2});
  auto k4 = select_far_apart_cores(oracle::complete(4), 2, 2);
  CHECK(k4.status == Status::Insufficient);
  CHECK(k4.cores.size() == 1);
  CHECK_THROWS_AS(select_far_apart_cores(oracle::cycle(5), 2, 1, 0), std::invalid_argument);
}

TEST_CASE("dense builder examples") {
  Graph k99 = oracle::complete_bipartite(9, 9);
  auto r = build_dense(k99, config(2, 3));
  CHECK(r.status == Status::Ok);
  REQUIRE(r.cert.k() == 3);
  CHECK(verify_subdivision(k99, r.cert));
  CHECK(same_side(k99, r.cert.cores));
  std::set<Vertex> middles;
  for (const auto& [pair, path] : r.cert.paths) middles.insert(path.vertices[1]);
  CHECK(middles.size() == 3);

  auto one = build_dense(k99, config(2, 1));
  CHECK(one.cert.k() == 1);
  CHECK(one.cert.paths.empty());
  CHECK(verify_subdivision(k99, one.cert));

  Graph c6 = oracle::cycle(6);
  auto two = build_dense(c6, config(2, 2));
  REQUIRE(two.cert.k() == 2);
  CHECK(two.cert.cores == std::vector<Vertex>{0, 2});
  CHECK(two.cert.paths.at({0, 1}).vertices == std::vector<Vertex>{0, 1, 2});

  CHECK(build_dense(k99, config(3, 3)).status == Status::ParityMismatch);
  CHECK_THROWS_AS(build_dense(oracle::cycle(5), config(2, 2)), std::invalid_argument);
}

TEST_CASE("dense builder drops cores instead of failing") {
  Graph k44 = oracle::complete_bipartite(4, 4);
  auto r = build_dense(k44, config(2, 4));
  CHECK(r.status == Status::Insufficient);
  CHECK(r.cert.k() == 3);
  CHECK(verify_subdivision(k44, r.cert));
  CHECK_FALSE(r.diagnostics.empty());
}

TEST_CASE("dense builder with longer paths") {
  Graph k66 = oracle::complete_bipartite(6, 6);
  auto r = build_dense(k66, config(4, 3));
  CHECK(verify_subdivision(k66, r.cert));
  CHECK(r.cert.k() == 3);
  CHECK(r.cert.ell == 4);

  Graph q6 = generate({Family::Hypercube, 0, 6, 1, 0, 1});
  auto s = build_dense(q6, config(6, 4));
  CHECK(verify_subdivision(q6, s.cert));
  CHECK(s.cert.k() >= 3);
}

TEST_CASE("high-degree builder") {
  Graph k99 = oracle::complete_bipartite(9, 9);
  BuildConfig cfg = config(2, 3);
  cfg.degree_threshold = 9;
  auto r = build_sparse_highdeg(k99, cfg);
  CHECK(r.status == Status::Ok);
  CHECK(r.cert.k() == 3);
  CHECK(verify_subdivision(k99, r.cert));

  cfg.degree_threshold = 10;
  auto none = build_sparse_highdeg(k99, cfg);
  CHECK(none.status == Status::PreconditionUnmet);
  CHECK_FALSE(none.diagnostics.empty());

  // Two adjacent centres of degree 20 share no neighbour, so ell = 2 fails;
  // they sit on opposite sides, so ell = 2 with two same-side cores cannot
  // even be attempted.
  std::vector<Edge> e{{0, 1}};
  for (int i = 0; i < 19; ++i) {
    e.emplace_back(0, 2 + i);
    e.emplace_back(1, 21 + i);
  }
  Graph dstar = oracle::make(40, e);
  BuildConfig dc = config(2, 2);
  dc.degree_threshold = 20;
  auto f = build_sparse_highdeg(dstar, dc);
  CHECK(f.status == Status::PreconditionUnmet);
  dc.ell = 1;
  auto g1 = build_sparse_highdeg(dstar, dc);
  CHECK(g1.cert.k() == 2);
  CHECK(verify_subdivision(dstar, g1.cert));
  dc.ell = 3;
  auto g3 = build_sparse_highdeg(dstar, dc);
  CHECK(g3.cert.k() == 1);
  CHECK(verify_subdivision(dstar, g3.cert));
  CHECK(g3.status == Status::Insufficient);
}

TEST_CASE("bounded-degree builder") {
  Graph q6 = generate({Family::Hypercube, 0, 6, 1, 0, 1});
  BuildConfig cfg = config(8, 3);
  cfg.r1 = 1;
  cfg.r2 = 2;
  auto r = build_sparse_bounded(q6, cfg);
  CHECK(verify_subdivision(q6, r.cert));
  CHECK(r.cert.k() == 3);
  CHECK(same_side(q6, r.cert.cores));
  bool relaxed = false;
  for (const auto& d : r.diagnostics) relaxed = relaxed || d.find("relaxed") != std::string::npos;
  CHECK(relaxed);

  Graph c10 = oracle::cycle(10);
  auto c = build_sparse_bounded(c10, config(5, 2));
  REQUIRE(c.cert.k() == 2);
  CHECK(verify_subdivision(c10, c.cert));
  CHECK(c.cert.paths.begin()->second.length() == 5);

  // a tree: no two same-side vertices joined by odd paths, and odd ell with
  // three cores is ruled out up front
  Graph tree = generate({Family::Star, 3, 0, 1, 0, 1});
  auto t = build_sparse_bounded(tree, config(3, 3));
  CHECK(t.status == Status::ParityMismatch);
  CHECK(t.cert.k() == 0);
  CHECK(verify_subdivision(tree, t.cert));
}

TEST_CASE("bounded-degree builder on random cubic bipartite graphs") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Graph g = generate({Family::RandomBipartiteRegular, 60, 3, 1, 0, seed});
    BuildConfig cfg = config(6, 4);
    auto r = build_sparse_bounded(g, cfg);
    CHECK(verify_subdivision(g, r.cert));
    CHECK(r.cert.k() >= 2);
  }
}

TEST_CASE("strip high degree") {
  Graph star = generate({Family::Star, 9, 0, 1, 0, 1});
  auto s = strip_high_degree(star, 5);
  CHECK(s.removed == VertexSet{0});
  CHECK(s.subgraph.graph.size() == 9);
  CHECK(s.subgraph.graph.edge_count() == 0);

  Graph q4 = generate({Family::Hypercube, 0, 4, 1, 0, 1});
  auto n = strip_high_degree(q4, 5);
  CHECK(n.removed.empty());
  CHECK(n.subgraph.graph == q4);
  CHECK(n.min_degree_kept);

  std::vector<Edge> e;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) e.emplace_back(i, 9 + j);
  for (int v = 0; v < 18; ++v) e.emplace_back(v, 18);
  Graph apex = oracle::make(19, e);
  auto a = strip_high_degree(apex, 18);
  CHECK(a.removed == VertexSet{18});
  CHECK(a.subgraph.graph.size() == 18);
  for (Vertex v : a.subgraph.to_parent) CHECK(apex.degree(v) < 18);
}

TEST_CASE("automatic dispatch") {
  Graph k32 = oracle::complete_bipartite(32, 32);
  auto r = build_auto(k32, BuildConfig{});
  CHECK(r.branch == "dense");
  CHECK(verify_subdivision(k32, r.cert));
  CHECK(r.cert.k() >= 2);
  const std::string t = trace_text(r.trace);
  CHECK(t.find("dense_test") != std::string::npos);
  CHECK(t.find("s: formula 20/(1-2c) = 40, used 1") != std::string::npos);

  Graph cubic = generate({Family::RandomBipartiteRegular, 100, 3, 1, 0, 7});
  auto b = build_auto(cubic, BuildConfig{});
  CHECK(b.branch == "bounded");
  CHECK(verify_subdivision(cubic, b.cert));

  Graph union10 = generate({Family::CompleteBipartiteUnion, 0, 6, 10, 0, 1});
  auto u = build_auto(union10, BuildConfig{});
  CHECK(verify_subdivision(union10, u.cert));
  CHECK(u.cert.k() >= 2);
  std::set<int> comps;
  const auto comp = components(union10);
  for (Vertex c : u.cert.cores) comps.insert(comp[static_cast<std::size_t>(c)]);
  CHECK(comps.size() == 1);
}

TEST_CASE("automatic dispatch on degenerate inputs") {
  auto empty = build_auto(Graph(), BuildConfig{});
  CHECK(empty.cert.k() == 0);
  CHECK(empty.fallback);
  auto isolated = build_auto(Graph(4), BuildConfig{});
  CHECK(isolated.cert.k() == 1);
  Graph tri = oracle::complete(3);
  auto t = build_auto(tri, BuildConfig{});
  CHECK(verify_subdivision(tri, t.cert));
  CHECK(t.cert.k() == 2);
  Graph p = oracle::path(2);
  auto e = build_auto(p, BuildConfig{});
  CHECK(verify_subdivision(p, e.cert));
  CHECK(e.cert.k() == 2);
  auto odd = build_auto(oracle::complete_bipartite(5, 5), config(3, 3));
  CHECK(verify_subdivision(oracle::complete_bipartite(5, 5), odd.cert));
  CHECK(trace_text(odd.trace).find("ParityMismatch") != std::string::npos);
}

TEST_CASE("theorem preset runs and reports its parameters") {
  BuildConfig cfg;
  cfg.preset = Preset::Theorem;
  Graph q5 = generate({Family::Hypercube, 0, 5, 1, 0, 1});
  auto r = build_auto(q5, cfg);
  CHECK(verify_subdivision(q5, r.cert));
  CHECK(trace_text(r.trace).find("preset: theorem") != std::string::npos);
}

TEST_CASE("builders are deterministic") {
  Graph g = generate({Family::RandomBipartiteRegular, 40, 4, 1, 0, 3});
  auto a = build_auto(g, BuildConfig{});
  auto b = build_auto(g, BuildConfig{});
  CHECK(a.cert.cores == b.cert.cores);
  CHECK(a.cert.paths == b.cert.paths);
  CHECK(trace_text(a.trace) == trace_text(b.trace));
}

TEST_CASE("builders never beat the oracle on small graphs") {
  for (int n = 3; n <= 6; ++n)
    for (const Graph& g : oracle::all_graphs(n, true)) {
      auto r = build_auto(g, BuildConfig{});
      REQUIRE(verify_subdivision(g, r.cert));
      auto o = oracle_max_k_at_ell(g, r.cert.ell);
      CHECK(r.cert.k() <= o.best_k);
    }
}
