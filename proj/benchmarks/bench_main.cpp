#include <benchmark/benchmark.h>

#include <cmath>

#include "nhadiab/criteria.hpp"
#include "nhadiab/ctime.hpp"
#include "nhadiab/cxbranch.hpp"
#include "nhadiab/presets.hpp"

using namespace nhadiab;

namespace {

void BM_TrackedSqrt(benchmark::State& state) {
  const int n = 4096;
  for (auto _ : state) {
    BranchTracker tracker;
    cplx acc{};
    for (int k = 0; k < n; ++k) {
      const double a = 4.0 * kPi * k / n;
      acc += tracked_sqrt(tracker, std::polar(1.0 + 0.5 * std::sin(3 * a), a)).value;
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_TrackedSqrt);

void BM_Propagate(benchmark::State& state) {
  const Scenario s = preset("fig4a");
  const auto schedule = s.protocol.build();
  IntegratorSettings settings = s.integrator();
  settings.steps = static_cast<std::size_t>(state.range(0));
  const StateVec psi0 = s.psi0(schedule);
  for (auto _ : state) {
    Trajectory tr = propagate(schedule, s.model(), psi0, settings);
    benchmark::DoNotOptimize(tr.samples.back().psi);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Propagate)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_UvCriterion(benchmark::State& state) {
  const Scenario s = preset("fig4a");
  const auto schedule = s.protocol.build();
  const Trajectory tr = propagate(schedule, s.model(), s.psi0(schedule), s.integrator());
  for (auto _ : state) {
    auto uv = uv_criterion(tr, Partition::UV, Mode::Minus, Mode::Plus);
    benchmark::DoNotOptimize(uv.value.data());
  }
}
BENCHMARK(BM_UvCriterion)->Unit(benchmark::kMillisecond);

void BM_Landscape(benchmark::State& state) {
  const Scenario s = preset("fig8a");
  const auto schedule = s.protocol.build();
  const auto n = static_cast<std::size_t>(state.range(0));
  ComplexRect rect = default_landscape_rect(schedule);
  rect.n_re = n;
  rect.n_im = n;
  LandscapeConfig cfg;
  cfg.contour_steps = 500;
  for (auto _ : state) {
    ComplexLandscape land = sample_landscape(schedule, s.model(), rect, cfg);
    benchmark::DoNotOptimize(land.nodes.data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Landscape)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_FindDegeneracies(benchmark::State& state) {
  const Scenario s = preset("fig8a");
  const auto schedule = s.protocol.build();
  const auto rect = default_search(schedule);
  for (auto _ : state) {
    auto found = find_degeneracies(schedule, s.model(), rect);
    benchmark::DoNotOptimize(found.data());
  }
}
BENCHMARK(BM_FindDegeneracies)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
