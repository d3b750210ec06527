#include <benchmark/benchmark.h>

#include "lpdc/design.hpp"
#include "lpdc/entanglement.hpp"
#include "lpdc/hom.hpp"
#include "lpdc/materials.hpp"

using namespace lpdc;

namespace {

struct Setup {
  DesignSpec spec{MaterialDb::builtin().get("BBO"), 250.0, MaterialDb::builtin().get("quartz")};
  Superlattice stack;

  Setup() : stack(make()) {}

  Superlattice make() {
    spec.pump = PumpSpec::from_fwhm(400.0, 1.95);
    return build_superlattice(spec, solve_spacer_length(spec).length);
  }
};

const Setup& setup() {
  static const Setup s;
  return s;
}

void BM_PhasematchAngle(benchmark::State& state) {
  const Material& bbo = setup().spec.crystal;
  for (auto _ : state) benchmark::DoNotOptimize(phasematch_angle(bbo, 0.4));
}
BENCHMARK(BM_PhasematchAngle);

void BM_SynthesizeJsa(benchmark::State& state) {
  const auto& s = setup();
  const FrequencyGrid g = default_grid(s.stack, s.spec.pump, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_jsa(s.stack, s.spec.pump, g));
}
BENCHMARK(BM_SynthesizeJsa)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Schmidt(benchmark::State& state) {
  const auto& s = setup();
  const JointAmplitude f =
      synthesize_jsa(s.stack, s.spec.pump, default_grid(s.stack, s.spec.pump, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(schmidt_decompose(f));
}
BENCHMARK(BM_Schmidt)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_HomTrace(benchmark::State& state) {
  const auto& s = setup();
  const FrequencyGrid g = default_grid(s.stack, s.spec.pump, static_cast<std::size_t>(state.range(0)));
  const JointAmplitude f = synthesize_jsa(s.stack, s.spec.pump, g);
  const DelayWindow w = default_delay_window(s.stack, g);
  for (auto _ : state) benchmark::DoNotOptimize(hom_trace(f, w));
}
BENCHMARK(BM_HomTrace)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
