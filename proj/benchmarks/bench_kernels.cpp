#include <benchmark/benchmark.h>

#include "nsac/config.hpp"
#include "nsac/diagnostics.hpp"
#include "nsac/initial.hpp"
#include "nsac/integrator.hpp"
#include "nsac/linear_oracle.hpp"
#include "nsac/spectral_field.hpp"

using namespace nsac;

namespace {

State perturbed(int n) {
  RunConfig cfg;
  cfg.grid.n = n;
  cfg.ic.kind = "random_perturbation";
  cfg.ic.max_mode = 2;
  return make_initial(cfg);
}

void BM_FftRoundTrip(benchmark::State& st) {
  const State s = perturbed(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto f = SpectralField::from_physical(s.grid, s.sigma);
    benchmark::DoNotOptimize(f.to_physical());
  }
}
BENCHMARK(BM_FftRoundTrip)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Rhs(benchmark::State& st) {
  const State s = perturbed(static_cast<int>(st.range(0)));
  const PhysParams p;
  for (auto _ : st) benchmark::DoNotOptimize(rhs(s, p));
}
BENCHMARK(BM_Rhs)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ImexStep(benchmark::State& st) {
  const State s = perturbed(static_cast<int>(st.range(0)));
  StepConfig c;
  c.adaptive = false;
  ImexStepper stepper(s, PhysParams{}, c);
  for (auto _ : st) stepper.advance(1e-3);
}
BENCHMARK(BM_ImexStep)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_EnergyLedger(benchmark::State& st) {
  const State s = perturbed(64);
  const PhysParams p;
  for (auto _ : st) benchmark::DoNotOptimize(energy_ledger(s, p));
}
BENCHMARK(BM_EnergyLedger)->Unit(benchmark::kMillisecond);

void BM_DecayNorm(benchmark::State& st) {
  const PhysParams p;
  const auto prof = DataProfile::power_law(1.0);
  const auto comp = st.range(0) == 0 ? Component::Phi : Component::Acoustic;
  for (auto _ : st) benchmark::DoNotOptimize(decay_norm(2, 1e3, prof, comp, p));
}
BENCHMARK(BM_DecayNorm)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
