#include <benchmark/benchmark.h>

#include <cmath>

#include "ftsmc/control.hpp"
#include "ftsmc/gain.hpp"
#include "ftsmc/metrics.hpp"
#include "ftsmc/ppf.hpp"
#include "ftsmc/scalar_math.hpp"
#include "ftsmc/sim.hpp"

namespace {

using namespace ftsmc;

PerformanceFunction first_order_pf() { return PerformanceFunction(4.0, 0.05, 4.0); }

HybridGainSpec first_order_gain() {
  return HybridGainSpec(9.0, 1.9, 0.7, 0.6, 0.2, MixedPowerGain(0.2, 0.5, 0.7, 1.5));
}

void bm_erf(benchmark::State& state) {
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ftsmc::erf(x));
    x = x >= 3.0 ? -3.0 : x + 0.125;
  }
}
BENCHMARK(bm_erf);

void bm_erf_inv(benchmark::State& state) {
  double y = -0.96;
  for (auto _ : state) {
    benchmark::DoNotOptimize(erf_inv(y));
    y = y >= 0.96 ? -0.96 : y + 0.04;
  }
}
BENCHMARK(bm_erf_inv);

void bm_eval_gain(benchmark::State& state) {
  const HybridGainSpec spec = first_order_gain();
  double w = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_gain(spec, w));
    w = w >= 1.2 ? 0.0 : w + 0.01;  // sweeps the inner and outer branches
  }
}
BENCHMARK(bm_eval_gain);

void bm_first_order_control(benchmark::State& state) {
  const PerformanceFunction pf = first_order_pf();
  const HybridGainSpec spec = first_order_gain();
  const SlidingConfig cfg(1.0, 0.0, SignMode::hard);
  for (auto _ : state) {
    benchmark::DoNotOptimize(first_order_control(pf, spec, 2.5, 0.1, cfg));
  }
}
BENCHMARK(bm_first_order_control);

void bm_second_order_ppf_control(benchmark::State& state) {
  const PerformanceFunction pf(2.5, 0.35, 1.4);
  const SecondOrderPlant plant(2.0, 0.15);
  const HybridGainSpec spec(0.8, 1.6, 0.7, 0.3, 0.3, GaussianGain(0.9));
  const SlidingConfig cfg(0.8, 0.01, SignMode::smoothed);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        second_order_ppf_control(pf, plant, spec, cfg, 1.2, -0.4, 0.2));
  }
}
BENCHMARK(bm_second_order_ppf_control);

void bm_first_order_run(benchmark::State& state) {
  const PerformanceFunction pf = first_order_pf();
  const HybridGainSpec spec = first_order_gain();
  const Disturbance dist(0.25, 10.0);
  const SimConfig cfg(10.0, 1e-3);
  const SlidingConfig sign_cfg(1.0, 0.0, SignMode::hard);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_first_order(pf, spec, dist, cfg, 3.0, sign_cfg));
  }
}
BENCHMARK(bm_first_order_run)->Unit(benchmark::kMillisecond);

void bm_compute_metrics(benchmark::State& state) {
  const PerformanceFunction pf = first_order_pf();
  const Trajectory traj =
      run_first_order(pf, first_order_gain(), Disturbance(0.25, 10.0),
                      SimConfig(10.0, 1e-3), 3.0, SlidingConfig(1.0, 0.0, SignMode::hard));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_metrics(traj, pf));
  }
}
BENCHMARK(bm_compute_metrics)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
