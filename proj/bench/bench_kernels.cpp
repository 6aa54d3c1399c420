// Serial reference vs OpenMP kernels for the hot paths: momentum quadrature,
// strip evaluation over a t grid, Virasoro bracket sweeps, Gram assembly.

#include <benchmark/benchmark.h>

#include "cftherm/fixtures.hpp"
#include "cftherm/fock_boson.hpp"
#include "cftherm/kms_strip.hpp"
#include "cftherm/one_particle.hpp"
#include "cftherm/weyl.hpp"

using namespace cftherm;

namespace {

const GridFunction& wide_fixture() {
  static const GridFunction f =
      bump_fixture(0.0, 0.5, std::size_t(1) << 16, 16.0);
  return f;
}

std::pair<GridFunction, GridFunction> strip_pair() {
  const Support h{-6.1, 6.1};
  return {GridFunction::sample([](double x) { return std::exp(-x * x); }, h),
          GridFunction::sample(
              [](double x) { return std::exp(-(x - 0.4) * (x - 0.4)); }, h)};
}

}  // namespace

static void BM_ThermalNorm(benchmark::State& state) {
  const Exec exec = state.range(0) ? Exec::par : Exec::serial;
  const GridFunction& f = wide_fixture();
  const ThermalParams tp(1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(thermal_norm_sq(f, tp, exec));
}
BENCHMARK(BM_ThermalNorm)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_KmsResidual(benchmark::State& state) {
  const Exec exec = state.range(0) ? Exec::par : Exec::serial;
  const auto [f, g] = strip_pair();
  const ThermalParams tp(1.0);
  const auto grid = default_t_grid(f, g);
  for (auto _ : state)
    benchmark::DoNotOptimize(kms_residual(f, g, tp, grid, exec));
}
BENCHMARK(BM_KmsResidual)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_VirasoroSweep(benchmark::State& state) {
  const Exec exec = state.range(0) ? Exec::par : Exec::serial;
  for (auto _ : state) {
    double worst = 0.0;
    for (int m1 = -2; m1 <= 2; ++m1)
      for (int m2 = -2; m2 <= 2; ++m2)
        worst = std::max(worst, check_virasoro(m1, m2, 8, 14, exec));
    benchmark::DoNotOptimize(worst);
  }
}
BENCHMARK(BM_VirasoroSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_GramAssembly(benchmark::State& state) {
  const Exec exec = state.range(0) ? Exec::par : Exec::serial;
  std::vector<FunPtr> fs;
  for (auto& f : random_smooth_family(8, 7, 2048)) fs.push_back(tag(std::move(f)));
  const ThermalParams tp(1.0, 0.7);
  for (auto _ : state)
    benchmark::DoNotOptimize(gram_psd_check(fs, tp, exec));
}
BENCHMARK(BM_GramAssembly)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
