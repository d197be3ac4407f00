// Serial reference vs OpenMP map on the two verification sweeps.

#include <benchmark/benchmark.h>

#include <random>

#include "twspin/enumerate.hpp"
#include "twspin/picard.hpp"
#include "twspin/sweep.hpp"

using namespace twspin;

namespace {

const std::vector<std::int64_t> kStabs{1, 2, 3, 4, 6};

std::vector<RootsnumCase> rootsnum_cases(std::int64_t r) {
  std::mt19937_64 rng(7);
  std::vector<RootsnumCase> cases;
  for (const auto& g : enumerate_stable_graphs(2, 0, kStabs)) {
    const auto G = share(g);
    cases.push_back({omega_twisted(G, 1), r});
    for (int i = 0; i < 4; ++i) cases.push_back({random_bundle(G, r, rng), r});
  }
  return cases;
}

std::vector<KernelCase> kernel_cases(std::int64_t r) {
  std::vector<KernelCase> cases;
  for (const auto& g : enumerate_stable_graphs(2, 0, kStabs)) cases.push_back({g, r});
  return cases;
}

void BM_rootsnum(benchmark::State& state, Exec exec) {
  const auto cases = rootsnum_cases(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rootsnum_sweep(cases, {}, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cases.size()));
}

void BM_kernel(benchmark::State& state, Exec exec) {
  const auto cases = kernel_cases(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_law_sweep(cases, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cases.size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_rootsnum, serial, Exec::serial)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_rootsnum, parallel, Exec::parallel)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_kernel, serial, Exec::serial)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_kernel, parallel, Exec::parallel)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
