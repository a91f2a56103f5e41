#include <catch_amalgamated.hpp>

#include <set>

#include "oracles.hpp"
#include "tksub/adjuster.hpp"
#include "tksub/harness.hpp"
#include "tksub/rng.hpp"

using namespace tksub;

namespace {

// C4 on 0..3 with a pendant 4 on 0 and 5 on 1.
Graph c4_pendants() { return oracle::make(6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {1, 5}}); }

// Two copies of c4_pendants (second shifted by 6), optionally joined 5-10.
Graph two_gadgets(bool joined) {
  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {1, 5},
                      {6, 7}, {7, 8}, {8, 9}, {9, 6}, {6, 10}, {7, 11}};
  if (joined) e.emplace_back(5, 10);
  return oracle::make(12, e);
}

Adjuster hand_built() {
  Adjuster a;
  a.v1 = 0;
  a.v2 = 1;
  a.F1 = Expansion{0, {0, 4}, 1};
  a.F2 = Expansion{1, {1, 5}, 1};
  a.A = {2, 3};
  a.k = 1;
  a.base_length = 1;
  a.path_family = {Path{{0, 1}}, Path{{0, 3, 2, 1}}};
  return a;
}

void check_progression(const Graph& g, const Adjuster& a) {
  REQUIRE(a.path_family.size() == static_cast<std::size_t>(a.k + 1));
  const VertexSet inside = set_union(a.A, make_set({a.v1, a.v2}));
  for (int i = 0; i <= a.k; ++i) {
    const Path& p = a.path_family[static_cast<std::size_t>(i)];
    CHECK(p.length() == a.base_length + 2 * i);
    CHECK(p.front() == a.v1);
    CHECK(p.back() == a.v2);
    CHECK(is_simple_path(g, p));
    for (Vertex v : p.vertices) CHECK(set_contains(inside, v));
  }
}

// All sums l(P) + l(Q) over vertex-disjoint P: a->b, Q: c->d.
void enumerate(const Graph& g, Vertex at, Vertex goal, std::vector<char>& used, Path& cur,
               const std::function<void(const Path&)>& out) {
  if (at == goal) {
    out(cur);
    return;
  }
  for (Vertex w : g.neighbors(at)) {
    if (used[static_cast<std::size_t>(w)]) continue;
    used[static_cast<std::size_t>(w)] = 1;
    cur.vertices.push_back(w);
    enumerate(g, w, goal, used, cur, out);
    cur.vertices.pop_back();
    used[static_cast<std::size_t>(w)] = 0;
  }
}

std::set<int> disjoint_pair_sums(const Graph& g, Vertex a, Vertex b, Vertex c, Vertex d) {
  std::set<int> sums;
  std::vector<char> used(g.size(), 0);
  used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(c)] = used[static_cast<std::size_t>(d)] = 1;
  Path p{{a}};
  enumerate(g, a, b, used, p, [&](const Path& pp) {
    std::vector<char> used2(g.size(), 0);
    for (Vertex v : pp.vertices) used2[static_cast<std::size_t>(v)] = 1;
    used2[static_cast<std::size_t>(c)] = 1;
    Path q{{c}};
    enumerate(g, c, d, used2, q, [&](const Path& qq) { sums.insert(pp.length() + qq.length()); });
  });
  return sums;
}

}  // namespace

TEST_CASE("verify adjuster on the hand-built gadget") {
  Graph g = c4_pendants();
  Adjuster a = hand_built();
  CHECK(verify_adjuster(g, a, 2, 1));
  CHECK(minimal_base_length(g, a) == 1);

  Adjuster missing = a;
  missing.path_family.pop_back();
  auto v = verify_adjuster(g, missing, 2, 1);
  CHECK_FALSE(v);
  CHECK(v.clause == "A4");

  Adjuster overlap = a;
  overlap.A = {2, 3, 4};
  auto w = verify_adjuster(g, overlap, 2, 1);
  CHECK_FALSE(w);
  CHECK(w.clause == "A1");

  CHECK(verify_adjuster(g, a, 3, 1).clause == "A2");
  Adjuster wrong_len = a;
  wrong_len.base_length = 3;
  CHECK_FALSE(verify_adjuster(g, wrong_len, 2, 1));
}

TEST_CASE("simple adjuster on C4 with pendants") {
  Graph g = c4_pendants();
  auto r = build_simple_adjuster(g, 2, 2, {});
  REQUIRE(r);
  const Adjuster& a = *r;
  CHECK(a.v1 == 0);
  CHECK(a.v2 == 1);
  CHECK(a.A == VertexSet{2, 3});
  CHECK(a.F1.members == VertexSet{0, 4});
  CHECK(a.F2.members == VertexSet{1, 5});
  CHECK(a.path_family[0].length() == 1);
  CHECK(a.path_family[1].length() == 3);
  CHECK(verify_adjuster(g, a, 2, 2));

  CHECK(build_simple_adjuster(oracle::path(6), 2, 2, {}).status == Status::NoCycle);
  CHECK(build_simple_adjuster(oracle::cycle(4), 2, 2, {}).status == Status::InsufficientExpansion);
  CHECK_THROWS_AS(build_simple_adjuster(oracle::cycle(5), 1, 2, {}), std::invalid_argument);
}

TEST_CASE("chain of range 1 equals the simple adjuster") {
  Graph g = c4_pendants();
  auto c = chain_adjusters(g, 1, 2, 2, {});
  REQUIRE(c.ok());
  auto s = build_simple_adjuster(g, 2, 2, {});
  CHECK(c.adjuster->path_family == s->path_family);
  CHECK(c.adjuster->A == s->A);
}

TEST_CASE("chaining two gadgets") {
  Graph g = two_gadgets(true);
  auto c = chain_adjusters(g, 2, 2, 4, {});
  REQUIRE(c.ok());
  const Adjuster& a = *c.adjuster;
  CHECK(a.k == 2);
  CHECK(verify_adjuster(g, a, 2, 4));
  check_progression(g, a);
  CHECK(a.base_length == 5);

  auto broken = chain_adjusters(two_gadgets(false), 2, 2, 4, {});
  CHECK_FALSE(broken.ok());
  CHECK(broken.failed_stage == 2);
  REQUIRE(broken.adjuster);
  CHECK(broken.adjuster->k == 1);
  CHECK(verify_adjuster(two_gadgets(false), *broken.adjuster, 2, 4));
  CHECK_THROWS_AS(chain_adjusters(g, 0, 2, 4, {}), std::invalid_argument);
}

TEST_CASE("chained adjusters over a corpus") {
  std::vector<Graph> corpus{generate({Family::Hypercube, 0, 5, 1, 0, 1}), generate({Family::Hypercube, 0, 6, 1, 0, 1}),
                            oracle::complete_bipartite(6, 6)};
  for (std::uint64_t seed = 1; seed <= 4; ++seed)
    corpus.push_back(generate({Family::RandomBipartiteRegular, 30, 3, 1, 0, seed}));
  int built = 0;
  for (const Graph& g : corpus) {
    const auto sides = *bipartition(g);
    for (int r = 1; r <= 3; ++r) {
      auto c = chain_adjusters(g, r, 2, 6, {});
      if (!c.ok()) continue;
      ++built;
      const Adjuster& a = *c.adjuster;
      CHECK(a.k == r);
      CHECK(verify_adjuster(g, a, 2, 6));
      check_progression(g, a);
      CHECK(a.base_length % 2 == pi(sides, a.v1, a.v2) % 2);
    }
  }
  CHECK(built >= 10);
}

TEST_CASE("pair-sum routing") {
  Graph k44 = oracle::complete_bipartite(4, 4);
  Expansion f1{0, {0}, 0}, f2{1, {1}, 0}, f3{2, {2}, 0}, f4{3, {3}, 0};
  auto r = connect_pair_sum_length(k44, f1, f2, f3, f4, 4, 20, {});
  REQUIRE(r);
  const int sum = r->p.length() + r->q.length();
  CHECK(sum >= 4);
  CHECK(sum <= 24);
  CHECK(is_simple_path(k44, r->p));
  CHECK(is_simple_path(k44, r->q));
  CHECK(sets_disjoint(make_set(r->p.vertices), make_set(r->q.vertices)));
  CHECK((r->p.front() == 0 || r->p.front() == 1));
  CHECK((r->q.front() == 0 || r->q.front() == 1));
  CHECK(r->p.front() != r->q.front());

  CHECK_THROWS_AS(connect_pair_sum_length(k44, f1, f1, f3, f4, 0, 20, {}), std::invalid_argument);

  // roots 0,1 on one side and 4,5 on the other: every sum is even
  Expansion g3{4, {4}, 0}, g4{5, {5}, 0};
  std::set<int> sums = disjoint_pair_sums(k44, 0, 4, 1, 5);
  for (int s : disjoint_pair_sums(k44, 0, 5, 1, 4)) sums.insert(s);
  REQUIRE_FALSE(sums.count(3));
  CHECK(sums.count(2));
  CHECK(connect_pair_sum_length(k44, f1, f2, g3, g4, 3, 0, {}).status == Status::Unsatisfiable);
  auto ok = connect_pair_sum_length(k44, f1, f2, g3, g4, 6, 0, {});
  REQUIRE(ok);
  CHECK(ok->p.length() + ok->q.length() == 6);
}

TEST_CASE("exact length connection examples") {
  Graph c6 = oracle::cycle(6);
  auto p = connect_exact_length(c6, Expansion{0, {0}, 0}, Expansion{2, {2}, 0}, 4, {});
  REQUIRE(p);
  CHECK(p->vertices == std::vector<Vertex>{0, 5, 4, 3, 2});
  CHECK(connect_exact_length(c6, Expansion{0, {0}, 0}, Expansion{2, {2}, 0}, 3, {}).status == Status::ParityMismatch);

  Graph k44 = oracle::complete_bipartite(4, 4);
  auto q = connect_exact_length(k44, Expansion{0, {0}, 0}, Expansion{1, {1}, 0}, 6, {});
  REQUIRE(q);
  CHECK(q->length() == 6);
  CHECK(is_simple_path(k44, *q));
  CHECK(q->front() == 0);
  CHECK(q->back() == 1);

  CHECK_THROWS_AS(connect_exact_length(oracle::cycle(5), Expansion{0, {0}, 0}, Expansion{2, {2}, 0}, 2, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(connect_exact_length(c6, Expansion{0, {0, 1}, 1}, Expansion{1, {1}, 0}, 3, {}),
                  std::invalid_argument);
}

TEST_CASE("exact length connection uses the adjuster on roomy graphs") {
  Graph q7 = generate({Family::Hypercube, 0, 7, 1, 0, 1});
  auto f1 = grow_expansion(q7, 0, 2, 2, {});
  auto f2 = grow_expansion(q7, 127, 2, 2, f1->members);
  REQUIRE(f1);
  REQUIRE(f2);
  for (int ell : {9, 11, 13, 15}) {
    auto p = connect_exact_length(q7, *f1, *f2, ell, {});
    REQUIRE(p);
    CHECK(p->length() == ell);
    CHECK(is_simple_path(q7, *p));
  }
  ConnectConfig only_adjuster;
  only_adjuster.direct_fallback = false;
  only_adjuster.adjuster_range = 3;
  auto p = connect_exact_length(q7, *f1, *f2, 13, {}, only_adjuster);
  REQUIRE(p);
  CHECK(p.detail == "adjuster");
  CHECK(p->length() == 13);
}

TEST_CASE("exact length connection agrees with a DFS oracle on small graphs") {
  Rng rng(41);
  int feasible = 0;
  for (int t = 0; t < 120; ++t) {
    Graph g = t % 2 ? oracle::complete_bipartite(5, 5) : generate({Family::RandomBipartite, 6, 0, 1, 0.5, rng.below(1000)});
    const auto sides = bipartition(g);
    const Vertex s = static_cast<Vertex>(rng.below(g.size()));
    const Vertex e = static_cast<Vertex>(rng.below(g.size()));
    if (s == e) continue;
    VertexSet avoid;
    const Vertex x = static_cast<Vertex>(rng.below(g.size()));
    if (x != s && x != e) avoid.push_back(x);
    const int ell = 1 + static_cast<int>(rng.below(10));
    auto p = connect_exact_length(g, Expansion{s, {s}, 0}, Expansion{e, {e}, 0}, ell, avoid);
    if (p.status == Status::ParityMismatch) {
      CHECK(ell % 2 != pi(*sides, s, e) % 2);
      continue;
    }
    const bool exists = oracle::has_path_of_length(g, s, e, ell, avoid);
    feasible += exists;
    CHECK(p.ok() == exists);
    if (p) {
      CHECK(p->length() == ell);
      CHECK(is_simple_path(g, *p));
      CHECK_FALSE(set_contains(make_set(p->vertices), x == s || x == e ? -1 : x));
    }
  }
  CHECK(feasible > 20);
}
