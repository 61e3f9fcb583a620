#include <benchmark/benchmark.h>

#include "picard/coupling.hpp"
#include "picard/fourier.hpp"
#include "picard/transport.hpp"

using namespace picard;

namespace {

FAParams reference_params() {
  const ReactorConfig c;
  return FAParams::from_config(c, derive_base_state(c, PinGeometry{}));
}

void BM_OmegaOpt(benchmark::State& state) {
  const FAParams p = reference_params();
  for (auto _ : state) benchmark::DoNotOptimize(omega_opt(p));
}
BENCHMARK(BM_OmegaOpt);

void BM_SpectralRadiusFa(benchmark::State& state) {
  const FAParams p = reference_params();
  for (auto _ : state) benchmark::DoNotOptimize(spectral_radius_fa(p, 0.7).rho);
}
BENCHMARK(BM_SpectralRadiusFa);

void BM_RhoPiQuadrature(benchmark::State& state) {
  const double xi = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rho_pi_by_quadrature(xi));
}
BENCHMARK(BM_RhoPiQuadrature)->Arg(1)->Arg(10)->Arg(1000);

void BM_DdSweep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CrossSections xs = CrossSections::uniform(n, 0.718, 0.68928, 0.0122, 0.0297);
  const ScalarField src = ScalarField::uniform(n, 0.5, 1.0);
  const Quadrature q = gauss_legendre(12);
  for (auto _ : state) benchmark::DoNotOptimize(dd_sweep(xs, src, q, BoundaryCondition::kReflective));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_DdSweep)->Arg(100)->Arg(300)->Arg(600);

void BM_EigenSolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto method = state.range(1) == 0 ? EigenMethod::kWielandt : EigenMethod::kPower;
  CrossSections xs = CrossSections::uniform(n, 0.718, 0.68928, 0.0122, 0.0297);
  for (std::size_t i = 0; i < n / 2; ++i) xs.nu_sigma_f[i] *= 1.01;
  const Quadrature q = gauss_legendre(12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        solve_k_eigenvalue(xs, q, BoundaryCondition::kReflective, 0.5, {100.0, 1.0}, {.method = method})
            .k_eff);
  }
}
BENCHMARK(BM_EigenSolve)->Args({100, 0})->Args({100, 1})->Args({300, 0})->Unit(benchmark::kMillisecond);

void BM_FixedPointMap(benchmark::State& state) {
  const ReactorConfig c;
  FixedPointMap map(c, PinGeometry{});
  ScalarField t = default_initial_temperature(c, PinGeometry{});
  for (auto _ : state) benchmark::DoNotOptimize(map(t));
}
BENCHMARK(BM_FixedPointMap)->Unit(benchmark::kMillisecond);

void BM_PicardRelaxed(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(picard_solve(ReactorConfig{}, PinGeometry{}, 0.66).k_eff);
  }
}
BENCHMARK(BM_PicardRelaxed)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace
BENCHMARK_MAIN();
