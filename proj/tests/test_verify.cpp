#include <catch_amalgamated.hpp>

#include <sstream>

#include "oracles.hpp"
#include "tksub/harness.hpp"
#include "tksub/verify.hpp"

using namespace tksub;

namespace {
SubdivisionCertificate c6_cert() {
  SubdivisionCertificate c;
  c.cores = {0, 2, 4};
  c.ell = 2;
  c.paths[{0, 1}] = Path{{0, 1, 2}};
  c.paths[{0, 2}] = Path{{0, 5, 4}};
  c.paths[{1, 2}] = Path{{2, 3, 4}};
  return c;
}
}  // namespace

TEST_CASE("verify subdivision examples") {
  Graph c6 = oracle::cycle(6);
  CHECK(verify_subdivision(c6, c6_cert()));

  SubdivisionCertificate k4;
  k4.cores = {0, 1, 2, 3};
  k4.ell = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k4.paths[{i, j}] = Path{{i, j}};
  CHECK(verify_subdivision(oracle::complete(4), k4));

  auto bad = c6_cert();
  bad.ell = 3;
  auto v = verify_subdivision(c6, bad);
  CHECK_FALSE(v);
  CHECK(v.clause == "d");
}

TEST_CASE("each mutated clause is reported") {
  Graph c6 = oracle::cycle(6);
  {
    auto c = c6_cert();
    c.paths.erase({1, 2});
    CHECK(verify_subdivision(c6, c).clause == "a");
  }
  {
    auto c = c6_cert();
    c.cores[1] = 0;
    CHECK(verify_subdivision(c6, c).clause == "a");
  }
  {
    auto c = c6_cert();
    c.cores.push_back(9);
    CHECK(verify_subdivision(c6, c).clause == "a");
  }
  {
    auto c = c6_cert();
    c.paths[{0, 1}] = Path{{0, 1, 0}};
    CHECK(verify_subdivision(c6, c).clause == "b");
  }
  {
    auto c = c6_cert();
    c.paths[{0, 1}] = Path{{0, 3, 2}};  // 0-3 is not an edge of C6
    CHECK(verify_subdivision(c6, c).clause == "c");
  }
  {
    auto c = c6_cert();
    c.paths[{0, 1}] = Path{{0, 1, 2, 3, 2}};
    auto v = verify_subdivision(c6, c);
    CHECK_FALSE(v);
  }
  {
    Graph k6 = oracle::complete(6);
    auto c = c6_cert();
    c.paths[{0, 1}] = Path{{0, 3, 2}};  // 3 is interior of the (1,2) path too
    CHECK(verify_subdivision(k6, c).clause == "e");
    auto d = c6_cert();
    d.paths[{0, 1}] = Path{{0, 4, 2}};  // passes through a core
    CHECK(verify_subdivision(k6, d).clause == "e");
  }
  {
    auto c = c6_cert();
    c.paths[{0, 1}] = Path{{2, 1, 0}};  // reversed orientation is fine
    CHECK(verify_subdivision(c6, c));
  }
}

TEST_CASE("certificate text round trip") {
  auto c = c6_cert();
  std::stringstream ss;
  write_certificate(ss, c);
  CHECK(ss.str() == "tkcert k=3 ell=2\ncores: 0 2 4\npath 0 1: 0 1 2\npath 0 2: 0 5 4\npath 1 2: 2 3 4\n");
  auto back = read_certificate(ss);
  CHECK(back.cores == c.cores);
  CHECK(back.ell == 2);
  CHECK(back.paths == c.paths);

  std::stringstream bad("tkcert k=3 ell=2\ncores: 0 2\n");
  CHECK_THROWS_AS(read_certificate(bad), std::runtime_error);
  std::stringstream junk("hello\n");
  CHECK_THROWS_AS(read_certificate(junk), std::runtime_error);
}

TEST_CASE("oracle examples") {
  auto k5 = oracle_max_subdivision(oracle::complete(5), 3);
  CHECK(k5.best_k == 5);
  CHECK(k5.best_ell == 1);
  CHECK(verify_subdivision(oracle::complete(5), k5.witness));

  Graph k44 = oracle::complete_bipartite(4, 4);
  auto b = oracle_max_subdivision(k44, 6);
  CHECK(b.best_k == 3);
  CHECK(b.best_ell == 2);
  CHECK(b.status == Status::Ok);
  CHECK(verify_subdivision(k44, b.witness));
  CHECK(b.witness.k() == 3);

  auto c5 = oracle_max_subdivision(oracle::cycle(5), 5);
  CHECK(c5.best_k == 2);
  CHECK(verify_subdivision(oracle::cycle(5), c5.witness));

  auto c6 = oracle_max_subdivision(oracle::cycle(6), 4);
  CHECK(c6.best_k == 3);
  CHECK(c6.best_ell == 2);

  CHECK(oracle_max_subdivision(Graph(3), 2).best_k == 1);
  CHECK(oracle_max_subdivision(Graph(), 2).best_k == 0);
  CHECK_THROWS_AS(oracle_max_subdivision(Graph(20), 2), std::invalid_argument);

  auto q3 = oracle_max_subdivision(generate({Family::Hypercube, 0, 3, 1, 0, 1}), 4);
  CHECK(q3.best_k == 3);
  auto pet = oracle_max_subdivision(generate({Family::Petersen}), 3);
  CHECK(pet.best_k >= 4);
  CHECK(verify_subdivision(generate({Family::Petersen}), pet.witness));
}

TEST_CASE("oracle at a fixed ell") {
  Graph k44 = oracle::complete_bipartite(4, 4);
  CHECK(oracle_max_k_at_ell(k44, 2).best_k == 3);
  CHECK(oracle_max_k_at_ell(k44, 1).best_k == 2);
  CHECK(oracle_max_k_at_ell(oracle::path(3), 3).best_k == 1);
}

TEST_CASE("oracle witnesses verify on all small graphs") {
  for (int n = 2; n <= 6; ++n)
    for (const Graph& g : oracle::all_graphs(n, true)) {
      auto r = oracle_max_subdivision(g, 3);
      REQUIRE(verify_subdivision(g, r.witness));
      CHECK(r.witness.k() == r.best_k);
      CHECK(r.best_k >= 2);
      // K_k needs k-1 degree somewhere
      CHECK(r.best_k <= degree_stats(g).maximum + 1);
    }
}

TEST_CASE("oracle respects its node budget") {
  OracleLimits tight{14, 50};
  auto r = oracle_max_subdivision(generate({Family::Petersen}), 4, tight);
  CHECK(r.status == Status::BudgetExceeded);
  CHECK(verify_subdivision(generate({Family::Petersen}), r.witness));
}
