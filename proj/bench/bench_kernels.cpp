// Serial reference loops against the OpenMP kernels.
#include <benchmark/benchmark.h>

#include "ndschaos/catalog.hpp"
#include "ndschaos/kernels.hpp"

using namespace ndschaos;

namespace {

NDSystem bench_system() {
  return NDSystem(Space::unit_interval(), ParametricFamily{FamilyKind::Logistic, {ParamDecay::Harmonic, 4.0, -1.0}});
}

std::vector<std::pair<Point, Point>> bench_pairs(std::size_t count) {
  const auto pts = sample_points(Space::unit_interval(), 2 * count, 7);
  std::vector<std::pair<Point, Point>> pairs;
  for (std::size_t i = 0; i < count; ++i) pairs.emplace_back(pts[2 * i], pts[2 * i + 1]);
  return pairs;
}

void BM_pair_profiles(benchmark::State& state, Exec exec) {
  const auto sys = bench_system();
  const auto pairs = bench_pairs(static_cast<std::size_t>(state.range(0)));
  const std::int64_t horizon = state.range(1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::pair_profiles(sys, pairs, horizon, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * horizon);
}

void BM_xi_counts(benchmark::State& state, Exec exec) {
  const auto sys = bench_system();
  const std::int64_t horizon = state.range(0);
  const auto prof = kernels::pair_profiles(sys, bench_pairs(1), horizon, Exec::Serial).front();
  const auto t = log_grid(1e-6, 1.0, static_cast<int>(state.range(1)));
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 1; n < horizon; n *= 2) ns.push_back(n);
  ns.push_back(horizon);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::xi_counts(prof.d, t, ns, exec));
  state.SetItemsProcessed(state.iterations() * horizon * state.range(1));
}

}  // namespace

BENCHMARK_CAPTURE(BM_pair_profiles, serial, Exec::Serial)->Args({64, 10000})->Args({256, 100000});
BENCHMARK_CAPTURE(BM_pair_profiles, parallel, Exec::Parallel)->Args({64, 10000})->Args({256, 100000});
BENCHMARK_CAPTURE(BM_xi_counts, serial, Exec::Serial)->Args({100000, 40})->Args({1000000, 100});
BENCHMARK_CAPTURE(BM_xi_counts, parallel, Exec::Parallel)->Args({100000, 40})->Args({1000000, 100});

BENCHMARK_MAIN();
