#include <benchmark/benchmark.h>

#include "headnav/harness.hpp"
#include "headnav/technique.hpp"
#include "headnav/user_model.hpp"

using namespace headnav;

namespace {

void BM_RateFunctions(benchmark::State& state) {
  const auto t = static_cast<Technique>(state.range(0));
  int i = 0;
  for (auto _ : state) {
    const double x = (i - 1000) / 1000.0;
    benchmark::DoNotOptimize(rate_function(t, x, {}));
    i = i == 2000 ? 0 : i + 1;
  }
  state.SetLabel(std::string(to_string(t)));
}
BENCHMARK(BM_RateFunctions)
    ->Arg(static_cast<int>(Technique::Linear))
    ->Arg(static_cast<int>(Technique::Sigmoid))
    ->Arg(static_cast<int>(Technique::Polynomial));

void BM_StepZone(benchmark::State& state) {
  ZoneState s;
  s.variant = static_cast<ZoneVariant>(state.range(0));
  int tick = 0;
  for (auto _ : state) {
    // Cycles Stop -> Dynamic -> Flick -> Dynamic so every branch is hit.
    const int phase = tick++ % 240;
    const double x = phase < 20 ? 0.0 : phase < 120 ? 0.3 : phase < 130 ? 0.6 : 0.3;
    const ZoneStep st = step_zone(s, x, 1.0 / 120.0);
    s = st.state;
    benchmark::DoNotOptimize(st.velocity);
  }
}
BENCHMARK(BM_StepZone)->DenseRange(0, 3);

void BM_Trial(benchmark::State& state) {
  TrialConfig cfg;
  cfg.technique = kAllTechniques[static_cast<std::size_t>(state.range(0))];
  cfg.display.window_arc_cm = 600.0;
  cfg.target_distance_cm = 1000.0;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    cfg.seed = seed++;
    benchmark::DoNotOptimize(run_trial(cfg, OperatorParams{}, TechniqueParams{}));
  }
  state.SetLabel(std::string(to_string(cfg.technique)));
}
BENCHMARK(BM_Trial)->DenseRange(0, 8)->Unit(benchmark::kMicrosecond);

void BM_Sweep(benchmark::State& state) {
  SweepSpec spec;
  spec.techniques = {Technique::Polynomial, Technique::Additive, Technique::DragFlick};
  spec.windows_cm = {400, 800};
  spec.distances_cm = {500, 1000};
  spec.repetitions = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(spec, 1));
  }
  state.SetItemsProcessed(state.iterations() * 48);
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
