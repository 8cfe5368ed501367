#include <benchmark/benchmark.h>

#include <vector>

#include "smalelab/rng.hpp"
#include "smalelab/rootfind.hpp"
#include "smalelab/search.hpp"
#include "smalelab/smale.hpp"

using namespace smalelab;

namespace {

Poly random_poly(int n, std::uint64_t stream) {
  CounterRng rng(7, stream);
  std::vector<Scalar> roots;
  for (int i = 0; i < n; ++i) roots.push_back(rng.in_disk(2.0));
  const Poly p = from_roots(roots);
  return Poly(std::vector<Scalar>(p.coeffs().begin(), p.coeffs().end()));
}

}  // namespace

static void FindRoots(benchmark::State& state) {
  const Poly p = random_poly(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_roots(p));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(FindRoots)->RangeMultiplier(2)->Range(4, 32);

static void CriticalContextBuild(benchmark::State& state) {
  const Poly p = random_poly(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    CriticalContext ctx(p);
    benchmark::DoNotOptimize(ctx);
  }
}
BENCHMARK(CriticalContextBuild)->Arg(4)->Arg(8)->Arg(16);

static void SAt(benchmark::State& state) {
  const Poly p = random_poly(static_cast<int>(state.range(0)), 3);
  const CriticalContext ctx(p);
  CounterRng rng(11, 0);
  std::vector<Scalar> zs;
  for (int i = 0; i < 256; ++i) zs.push_back(rng.in_disk(3.0));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s_at(ctx, zs[i++ & 255]));
  }
}
BENCHMARK(SAt)->Arg(4)->Arg(8)->Arg(16);

static void EstimateS(benchmark::State& state) {
  const CriticalContext ctx(random_poly(static_cast<int>(state.range(0)), 4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_S(ctx));
  }
}
BENCHMARK(EstimateS)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void CheckSmale(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  HuntConfig cfg;
  const auto [P, z] = random_cstar_trial(n, k, 42, 0, cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_smale(P, z));
  }
}
BENCHMARK(CheckSmale)->Args({3, 2})->Args({4, 3})->Args({5, 4})->Unit(benchmark::kMicrosecond);

static void SearchS0(benchmark::State& state) {
  SearchConfig cfg;
  cfg.restarts = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_extremal_s0(static_cast<int>(state.range(0)), cfg));
  }
}
BENCHMARK(SearchS0)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
