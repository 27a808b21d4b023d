// Microbenchmarks for the hot paths: canonical labeling, permutation-group
// closure, ring validation and the exhaustive subset census.

#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "schurkit/census.hpp"
#include "schurkit/group.hpp"
#include "schurkit/iso.hpp"
#include "schurkit/perm.hpp"
#include "schurkit/rng.hpp"
#include "schurkit/sring.hpp"

using namespace schurkit;

namespace {

GroupPtr grp(std::vector<int> factors) {
  return std::make_shared<const Group>(std::move(factors));
}

ColorDigraph random_digraph(int n, int palette, std::uint64_t seed) {
  const CounterRng rng(seed);
  std::vector<std::vector<int>> color(n, std::vector<int>(n, 0));
  std::uint64_t i = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      color[x][y] = static_cast<int>(rng.at(i++) % static_cast<std::uint64_t>(palette));
  return ColorDigraph::make(color);
}

void bm_canonize(benchmark::State& state) {
  const ColorDigraph d = random_digraph(static_cast<int>(state.range(0)), 3, 99);
  for (auto _ : state) benchmark::DoNotOptimize(canonize(d));
}
BENCHMARK(bm_canonize)->Arg(8)->Arg(12)->Arg(16);

void bm_cayley_canonize(benchmark::State& state) {
  const GroupPtr g = grp({4, 2, 2});
  const ColorDigraph d = cayley_digraph(*g, 0x2316);
  for (auto _ : state) benchmark::DoNotOptimize(canonize(d));
}
BENCHMARK(bm_cayley_canonize);

void bm_group_closure(benchmark::State& state) {
  const GroupPtr g = grp({4, 2, 2});
  const PermGroup reg = right_regular(*g);
  std::vector<Perm> gens = reg.generators();
  // add the inversion automorphism to force a real closure run
  std::vector<int> img(16);
  for (int x = 0; x < 16; ++x) img[x] = g->inv(x);
  gens.emplace_back(img);
  for (auto _ : state) benchmark::DoNotOptimize(PermGroup::close(gens));
}
BENCHMARK(bm_group_closure);

void bm_ring_validate(benchmark::State& state) {
  const GroupPtr g = grp({8});
  const std::vector<ElemSet> classes = {0x01, 0x10, 0x44, 0xAA};
  for (auto _ : state) benchmark::DoNotOptimize(SRing::validate(g, classes));
}
BENCHMARK(bm_ring_validate);

void bm_subset_census_c8(benchmark::State& state) {
  const GroupPtr g = grp({8});
  for (auto _ : state) benchmark::DoNotOptimize(subset_census(g));
}
BENCHMARK(bm_subset_census_c8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
