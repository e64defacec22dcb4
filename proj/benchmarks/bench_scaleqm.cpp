#include <benchmark/benchmark.h>

#include <vector>

#include "scaleqm/scaleqm.hpp"

namespace {

using namespace scaleqm;

void BM_SpectralDerivative(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid grid = Grid::with_length(1, n, 20.0);
  const WavePacket psi = packets::random_smooth(grid, 1, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(derivative(grid, psi.amplitudes(), 0, DerivativeScheme::Spectral));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_SpectralDerivative)->RangeMultiplier(4)->Range(64, 16384);

void BM_CovariantKinetic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid grid = Grid::with_length(1, n, 20.0);
  const ScalingField field =
      build_field(grid, gamma_presets::sine(0.3, 20.0), DerivativeScheme::Spectral);
  const WavePacket psi = packets::random_smooth(grid, 1, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(covariant_kinetic_apply(psi, field, {}, DerivativeScheme::Spectral));
  }
}
BENCHMARK(BM_CovariantKinetic)->RangeMultiplier(4)->Range(64, 16384);

void BM_HamiltonianSpectrum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid grid = Grid::with_length(1, n, 20.0);
  const ScalingField field =
      build_field(grid, gamma_presets::sine(0.3, 20.0), DerivativeScheme::Spectral);
  const PotentialField well = PotentialField::periodic_well(grid, 1.0);
  const Gauge gauge = state.range(1) ? Gauge::GammaModified : Gauge::Standard;
  for (auto _ : state) {
    const auto h = build_hamiltonian(field, well, {}, gauge, DerivativeScheme::Spectral);
    benchmark::DoNotOptimize(eigen_spectrum(h));
  }
}
BENCHMARK(BM_HamiltonianSpectrum)
    ->ArgsProduct({{32, 64, 128, 256}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_ScaleEntangled(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto particles = static_cast<std::size_t>(state.range(1));
  const Grid grid = Grid::with_length(1, n, 20.0);
  const ScalingField field =
      build_field(grid, gamma_presets::sine(0.3, 20.0), DerivativeScheme::Spectral);
  std::vector<WavePacket> packets;
  for (std::size_t j = 0; j < particles; ++j) {
    packets.push_back(packets::random_smooth(grid, j + 1, 3));
  }
  const EntangledState psi = product_state(packets);
  for (auto _ : state) benchmark::DoNotOptimize(scale_entangled(psi, field));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(psi.amplitudes().size()));
}
BENCHMARK(BM_ScaleEntangled)->Args({64, 2})->Args({256, 2})->Args({32, 3})->Args({64, 3});

void BM_ConvolvedMomentum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid grid = Grid::with_length(1, n, 20.0);
  const ScalingField field =
      build_field(grid, gamma_presets::sine(0.3, 20.0), DerivativeScheme::Spectral);
  const WavePacket psi = packets::random_smooth(grid, 1, 8);
  for (auto _ : state) benchmark::DoNotOptimize(convolved_momentum_representation(psi, field));
}
BENCHMARK(BM_ConvolvedMomentum)->RangeMultiplier(2)->Range(64, 1024);

}  // namespace

BENCHMARK_MAIN();
