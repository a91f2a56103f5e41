#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "oracles.hpp"
#include "tksub/harness.hpp"

using namespace tksub;

TEST_CASE("generator examples") {
  Graph u = generate({Family::CompleteBipartiteUnion, 0, 3, 2, 0, 1});
  CHECK(u.size() == 12);
  CHECK(u.edge_count() == 18);
  for (Vertex v = 0; v < 12; ++v) CHECK(u.degree(v) == 3);
  CHECK(components(u)[11] != components(u)[0]);

  Graph q3 = generate({Family::Hypercube, 0, 3, 1, 0, 1});
  CHECK(q3.size() == 8);
  CHECK(q3.edge_count() == 12);
  for (Vertex v = 0; v < 8; ++v) CHECK(q3.degree(v) == 3);
  CHECK(bipartition(q3).has_value());

  CHECK(generate({Family::Cycle, 6}) == oracle::cycle(6));
  CHECK(generate({Family::Complete, 5}) == oracle::complete(5));
  CHECK(generate({Family::PathGraph, 4}) == oracle::path(4));
  Graph pet = generate({Family::Petersen});
  CHECK(pet.edge_count() == 15);
  CHECK(oracle::girth(pet) == 5);
}

TEST_CASE("random families") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Graph r = generate({Family::RandomRegular, 50, 4, 1, 0, seed});
    for (Vertex v = 0; v < 50; ++v) CHECK(r.degree(v) == 4);
    CHECK(r == generate({Family::RandomRegular, 50, 4, 1, 0, seed}));

    Graph b = generate({Family::RandomBipartiteRegular, 20, 5, 1, 0, seed});
    for (Vertex v = 0; v < 40; ++v) CHECK(b.degree(v) == 5);
    auto s = bipartition(b);
    REQUIRE(s);

    Graph p = generate({Family::RandomBipartite, 10, 0, 1, 0.3, seed});
    CHECK(p.size() == 20);
    for (const auto& [x, y] : p.edges()) CHECK((x < 10) != (y < 10));
  }
  CHECK_FALSE(generate({Family::RandomRegular, 30, 3, 1, 0, 1}) == generate({Family::RandomRegular, 30, 3, 1, 0, 2}));
  CHECK(generate({Family::RandomBipartite, 5, 0, 1, 1.0, 1}).edge_count() == 25);
}

TEST_CASE("generator parameter errors") {
  CHECK_THROWS_AS(generate({Family::Cycle, 2}), std::invalid_argument);
  CHECK_THROWS_AS(generate({Family::RandomRegular, 5, 3, 1, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate({Family::RandomRegular, 4, 4, 1, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(generate({Family::Hypercube, 0, 25}), std::invalid_argument);
  CHECK_THROWS_AS(generate({Family::RandomBipartite, 3, 0, 1, 1.5, 1}), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("moebius"), std::invalid_argument);
  CHECK(parse_family("hypercube") == Family::Hypercube);
  CHECK(std::string(family_name(Family::RandomRegular)) == "random_regular");
}

TEST_CASE("bench over K_{d,d}") {
  std::vector<GeneratorSpec> sweep;
  for (int d : {4, 8, 16}) sweep.push_back({Family::CompleteBipartiteUnion, 0, d, 1, 0, 1});
  const auto dir = std::filesystem::temp_directory_path() / "tksub_bench_test";
  std::filesystem::create_directories(dir);
  BenchOptions opts;
  opts.cert_dir = dir;
  BuildConfig cfg;
  auto table = bench_scaling(sweep, cfg, opts);
  REQUIRE(table.rows.size() == 3);
  for (const auto& r : table.rows) {
    CHECK(r.error.empty());
    CHECK(r.verified);
    CHECK(r.ell == 2);
  }
  CHECK(table.rows[0].k <= table.rows[1].k);
  CHECK(table.rows[1].k <= table.rows[2].k);
  CHECK(table.warnings.empty());

  std::ostringstream results;
  write_bench_results(results, table, true);
  std::istringstream lines(results.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    CHECK(line.rfind("row n=", 0) == 0);
    CHECK(line.find(" ms=0.0") != std::string::npos);
    ++count;
  }
  CHECK(count == 3);
  std::ostringstream t;
  write_bench_table(t, table, cfg.c);
  CHECK(t.str().find("sqrt(d)") != std::string::npos);

  auto again = bench_scaling(sweep, cfg, opts);
  std::ostringstream results2;
  write_bench_results(results2, again, true);
  CHECK(results.str() == results2.str());
}

TEST_CASE("bench edge cases") {
  auto empty = bench_scaling({}, BuildConfig{});
  CHECK(empty.rows.empty());
  std::ostringstream o;
  write_bench_results(o, empty, true);
  CHECK(o.str().empty());

  // a spec the generator rejects is recorded and the run continues
  auto bad = bench_scaling({{Family::Cycle, 2}, {Family::Cycle, 8}}, BuildConfig{});
  REQUIRE(bad.rows.size() == 2);
  CHECK_FALSE(bad.rows[0].error.empty());
  CHECK(bad.rows[0].fallback);
  CHECK(bad.rows[1].error.empty());
  CHECK(bad.rows[1].verified);

  // nothing to build on: the trivial fallback row
  auto star = bench_scaling({{Family::Star, 5}}, BuildConfig{});
  CHECK(star.rows[0].verified);
  CHECK(star.rows[0].k == 2);
  CHECK(star.rows[0].fallback);
}
