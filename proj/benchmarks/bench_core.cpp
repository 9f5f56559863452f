#include <benchmark/benchmark.h>

#include "levmag/constants.hpp"
#include "levmag/oracles/langevin.hpp"
#include "levmag/oracles/philox.hpp"
#include "levmag/oracles/welch.hpp"
#include "levmag/sensitivity.hpp"
#include "levmag/spectrum.hpp"
#include "levmag/spin_dressing.hpp"

using namespace levmag;

namespace {

SystemParams cooled_params() {
  SystemParams p;
  p.effective_temp = 4.0;
  p.mean_phonon = 0.3;
  return with_coupling(p, 0.11);
}

}  // namespace

static void BM_PsdGrid(benchmark::State& state) {
  const OperatingPoint op = make_operating_point(cooled_params(), Regime::Cooled);
  std::vector<double> grid;
  for (int i = 0; i < state.range(0); ++i) grid.push_back(op.omega_m() * (0.5 + double(i) / state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(position_psd(grid, op));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PsdGrid)->Arg(1000)->Arg(100000);

static void BM_LindbladSteadyState(benchmark::State& state) {
  const DressedSpin d = dressed_states(0.8, resonant_detuning(0.8, 1.0), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(steady_populations(d, 0.25));
}
BENCHMARK(BM_LindbladSteadyState);

static void BM_CouplingSweep(benchmark::State& state) {
  const SystemParams p = cooled_params();
  std::vector<double> xs;
  for (int i = 0; i < 200; ++i) xs.push_back(0.01 + 0.003 * i);
  for (auto _ : state) benchmark::DoNotOptimize(sensitivity_sweep(p, Regime::Cooled, SweepAxis::Coupling, xs));
}
BENCHMARK(BM_CouplingSweep)->Unit(benchmark::kMillisecond);

static void BM_LangevinSteps(benchmark::State& state) {
  const OperatingPoint op = make_operating_point(cooled_params(), Regime::Cooled);
  const double T = constants::two_pi / op.omega_m();
  oracles::LangevinConfig c;
  c.dt = T / 100;
  c.duration = c.dt * 100000;
  for (auto _ : state) benchmark::DoNotOptimize(oracles::simulate_langevin(op, c));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_LangevinSteps)->Unit(benchmark::kMillisecond);

static void BM_Welch(benchmark::State& state) {
  std::vector<double> x;
  for (std::uint64_t i = 0; i < (1u << 20) / 4; ++i)
    for (double z : oracles::normals4({i, 0, 0, 0}, {1, 0})) x.push_back(z);
  oracles::WelchConfig w;
  w.segment_len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracles::welch_psd(x, 1e-6, w));
  state.SetBytesProcessed(state.iterations() * x.size() * sizeof(double));
}
BENCHMARK(BM_Welch)->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
