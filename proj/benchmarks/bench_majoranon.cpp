#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "majoranon/majoranon.hpp"

using namespace majoranon;

namespace {

SpinorField packet(std::size_t n) {
  return gaussian_spinor(GridSpec::periodic(n), {.n0 = centred_n0(n), .sigma = n / 8.0});
}

void BM_DiracEvolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto psi = packet(n);
  const GridSpec grid = GridSpec::periodic(n);
  for (auto _ : state) benchmark::DoNotOptimize(dirac_evolve(psi, MassSign::plus, {0.65, 2.0}, grid));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DiracEvolve)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_MajoranaComposed(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto psi = packet(n);
  const GridSpec grid = GridSpec::periodic(n);
  for (auto _ : state) benchmark::DoNotOptimize(majorana_evolve_composed(psi, {0.65, 2.0}, grid));
}
BENCHMARK(BM_MajoranaComposed)->RangeMultiplier(4)->Range(16, 1024);

void BM_MajoranaReference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto psi = packet(n);
  const GridSpec grid = GridSpec::periodic(n);
  for (auto _ : state) benchmark::DoNotOptimize(majorana_evolve_reference(psi, {0.65, 2.0}, grid, 1e-3));
}
BENCHMARK(BM_MajoranaReference)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_LatticeEvolve(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto method = state.range(1) == 0 ? LatticeMethod::eigen : LatticeMethod::rk4;
  const auto lattice = build_binary_lattice(k, 0.064, 0.65 * 0.064, SublatticeOrdering::AB);
  const auto f0 = encode_spinor_to_lattice(packet(k / 2), GradientSign::plus);
  for (auto _ : state) benchmark::DoNotOptimize(lattice_evolve(lattice, f0, 4.4 / 0.064, method));
  state.SetLabel(method == LatticeMethod::eigen ? "eigen" : "rk4");
}
BENCHMARK(BM_LatticeEvolve)
    ->ArgsProduct({{26, 64, 256}, {0, 1}})
    ->Unit(benchmark::kMicrosecond);

void BM_LatticePropagatorReuse(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const LatticePropagator prop(build_binary_lattice(k, 0.064, 0.65 * 0.064, SublatticeOrdering::AB));
  const auto f0 = encode_spinor_to_lattice(packet(k / 2), GradientSign::plus);
  for (auto _ : state) benchmark::DoNotOptimize(prop.evolve(f0, 4.4 / 0.064));
}
BENCHMARK(BM_LatticePropagatorReuse)->Arg(26)->Arg(64)->Arg(256);

void BM_SimulateDevice(benchmark::State& state) {
  const auto& preset = lowmass_preset();
  const auto spec = preset_device(preset, 4.4);
  const auto psi0 = preset_initial_spinor(preset);
  const auto zetas = sample_range(4.4, 0.05);
  const std::vector<double> series(zetas.begin() + 1, zetas.end());
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_device(spec, psi0, series, threads));
}
BENCHMARK(BM_SimulateDevice)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
