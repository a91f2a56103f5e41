// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "tksub/expander.hpp"
#include "tksub/harness.hpp"
#include "tksub/kernels.hpp"

namespace {

using namespace tksub;

Graph regular(int n, int d) { return generate({Family::RandomRegular, n, d, 1, 0.5, 7}); }

template <bool Parallel>
void BM_Girth(benchmark::State& state) {
  const Graph g = regular(static_cast<int>(state.range(0)), 3);
  const VertexMask none(g.size());
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? kernels::girth(g, none) : kernels::serial::girth(g, none));
}

template <bool Parallel>
void BM_DistanceMatrix(benchmark::State& state) {
  const Graph g = regular(static_cast<int>(state.range(0)), 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? kernels::distance_matrix(g) : kernels::serial::distance_matrix(g));
}

template <bool Parallel>
void BM_SubsetScan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = regular(n, 4);
  std::vector<std::uint32_t> masks(g.size(), 0);
  for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
    for (Vertex w : g.neighbors(v)) masks[static_cast<std::size_t>(v)] |= 1u << w;
  // A limit nothing violates, so the whole space is scanned.
  std::vector<double> limit(static_cast<std::size_t>(n + 1), 0.0);
  for (auto _ : state) {
    auto r = Parallel ? kernels::scan_subsets(masks, 1, n / 2, limit) : kernels::serial::scan_subsets(masks, 1, n / 2, limit);
    benchmark::DoNotOptimize(r.checked);
  }
}

template <bool Parallel>
void BM_BallScan(benchmark::State& state) {
  const Graph g = regular(static_cast<int>(state.range(0)), 3);
  std::vector<Vertex> roots(g.size());
  for (std::size_t i = 0; i < roots.size(); ++i) roots[i] = static_cast<Vertex>(i);
  std::vector<double> limit(g.size() + 1, 0.0);
  const int hi = static_cast<int>(g.size() / 2);
  for (auto _ : state) {
    auto r = Parallel ? kernels::scan_balls(g, roots, 1, hi, limit) : kernels::serial::scan_balls(g, roots, 1, hi, limit);
    benchmark::DoNotOptimize(r.checked);
  }
}

}  // namespace

BENCHMARK(BM_Girth<false>)->Arg(1024)->Arg(4096);
BENCHMARK(BM_Girth<true>)->Arg(1024)->Arg(4096);
BENCHMARK(BM_DistanceMatrix<false>)->Arg(512)->Arg(2048);
BENCHMARK(BM_DistanceMatrix<true>)->Arg(512)->Arg(2048);
BENCHMARK(BM_SubsetScan<false>)->Arg(18)->Arg(22);
BENCHMARK(BM_SubsetScan<true>)->Arg(18)->Arg(22);
BENCHMARK(BM_BallScan<false>)->Arg(1024);
BENCHMARK(BM_BallScan<true>)->Arg(1024);

BENCHMARK_MAIN();
