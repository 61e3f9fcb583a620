#include <gtest/gtest.h>

#include <cmath>

#include "picard/coupling.hpp"
#include "picard/errors.hpp"
#include "picard/fourier.hpp"
#include "picard/thermal.hpp"

using namespace picard;

namespace {

ReactorConfig short_core() {
  ReactorConfig c;
  c.core_height_L = 50.0;
  c.n_cells = 100;
  return c;
}

double fa_radius(const ReactorConfig& c, double omega) {
  return spectral_radius_fa(FAParams::from_config(c, derive_base_state(c, PinGeometry{})), omega).rho;
}

}  // namespace

TEST(FixedPointMap, NominalStateIsAFixedPoint) {
  const ReactorConfig c = short_core();
  FixedPointMap map(c, PinGeometry{}, {.tol = 1e-12});
  const ScalarField t0 = ScalarField::uniform(100, c.cell_width(), map.base().t0);
  const ScalarField t = map(t0);
  EXPECT_LT(max_abs_difference(t, t0), 1e-7);
  EXPECT_NEAR(map.last_transport().k_eff, map.base().k_eff0, 1e-10);
}

TEST(FixedPointMap, FixedPointIgnoresNuAndKappa) {
  ReactorConfig a = short_core();
  ReactorConfig b = a;
  b.nu = 2.9;
  b.kappa = 3.3e-11;
  ScalarField t = default_initial_temperature(a, PinGeometry{});
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += 5.0 * std::sin(0.2 * static_cast<double>(i));
  FixedPointMap ma(a, PinGeometry{}, {.tol = 1e-12});
  FixedPointMap mb(b, PinGeometry{}, {.tol = 1e-12});
  EXPECT_LT(max_abs_difference(ma(t), mb(t)), 1e-8);
}

TEST(Picard, RelaxedReferenceConvergesAtPredictedRate) {
  const CoupledSolution s = picard_solve(ReactorConfig{}, PinGeometry{}, 0.66);
  EXPECT_EQ(s.trace.status, IterationStatus::kConverged);
  const auto ratio = s.trace.asymptotic_ratio(10);
  ASSERT_TRUE(ratio.has_value());
  EXPECT_NEAR(*ratio, 0.337, 0.02);
  EXPECT_LT(s.trace.records.back().error, 1e-7);
}

TEST(Picard, UnrelaxedReferenceDiverges) {
  const CoupledSolution s = picard_solve(ReactorConfig{}, PinGeometry{}, 1.0);
  EXPECT_EQ(s.trace.status, IterationStatus::kDiverged);
  const auto ratio = s.trace.asymptotic_ratio(10);
  ASSERT_TRUE(ratio.has_value());
  EXPECT_NEAR(*ratio, 1.042, 0.02);
}

TEST(Picard, ShortCoreConvergesUnrelaxed) {
  const ReactorConfig c = short_core();
  const CoupledSolution s = picard_solve(c, PinGeometry{}, 1.0);
  EXPECT_EQ(s.trace.status, IterationStatus::kConverged);
  EXPECT_NEAR(*s.trace.asymptotic_ratio(5), fa_radius(c, 1.0), 0.02);
  EXPECT_NEAR(s.k_eff, derive_base_state(c, PinGeometry{}).k_eff0, 1e-8);
}

TEST(Picard, AxialCoolantConverges) {
  ReactorConfig c = short_core();
  c.coolant_mode = CoolantMode::kAxial;
  const CoupledSolution s = picard_solve(c, PinGeometry{}, 0.8);
  EXPECT_EQ(s.trace.status, IterationStatus::kConverged);
  EXPECT_GT(s.t_m[s.t_m.size() - 1], s.t_m[0]);
  EXPECT_NEAR(s.t_m[s.t_m.size() - 1] - c.t_m, kDefaultCoolantRise, 1.0);
}

TEST(Picard, RejectsRelaxationOutsideUnitInterval) {
  EXPECT_THROW(picard_solve(short_core(), PinGeometry{}, 0.0), std::invalid_argument);
  EXPECT_THROW(picard_solve(short_core(), PinGeometry{}, 1.2), std::invalid_argument);
}

TEST(Aa1, ScalarAffineMapConvergesInThreeSteps) {
  // x -> g x + b with |g| > 1; Picard diverges, depth-one mixing is exact.
  const double g = -3.0, b = 2.0, fixed = b / (1.0 - g);
  Aa1Mixer mixer;
  double x = 10.0;
  int steps = 0;
  while (std::abs(x - fixed) > 1e-12 && steps < 10) {
    const double gx = g * x + b;
    x = mixer.next(std::span<const double>(&x, 1), std::span<const double>(&gx, 1))[0];
    ++steps;
  }
  EXPECT_LE(steps, 3);
  EXPECT_NEAR(x, fixed, 1e-12);
}

TEST(Aa1, DegenerateStepFallsBackToPicard) {
  Aa1Mixer mixer;
  const std::vector<double> x{1.0, 2.0}, gx{2.0, 3.0};
  mixer.next(x, gx);
  const std::vector<double> out = mixer.next(x, gx);
  EXPECT_EQ(out, gx);
  EXPECT_EQ(mixer.degenerate_steps(), 1);
}

TEST(Aa1, ConvergesOnUnstableReferenceCase) {
  const CoupledSolution s = aa1_solve(ReactorConfig{}, PinGeometry{});
  EXPECT_EQ(s.trace.status, IterationStatus::kConverged);
  EXPECT_LE(s.trace.iterations(), 200);
}

TEST(Estimator, ShortCoreMatchesPrediction) {
  const ReactorConfig c = short_core();
  const SpectralEstimate e = estimate_spectral_radius_numerical(c, PinGeometry{}, 1.0);
  ASSERT_TRUE(e.rho.has_value());
  EXPECT_NEAR(*e.rho, 0.121, 0.02);
  EXPECT_NEAR(*e.rho, fa_radius(c, 1.0), 0.02);
}

TEST(Estimator, UnrelaxedErrorAlternatesInSign) {
  const SpectralEstimate e = estimate_spectral_radius_numerical(short_core(), PinGeometry{}, 1.0);
  ASSERT_GE(e.edge_error.size(), 6u);
  for (std::size_t k = 1; k < e.edge_error.size(); ++k) EXPECT_LT(e.edge_error[k] * e.edge_error[k - 1], 0.0) << k;
}

TEST(Estimator, SeededRandomPerturbationIsReproducible) {
  SpectralEstimateOptions o;
  o.shape = PerturbationShape::kRandom;
  o.seed = 42;
  const ScalarField a = perturbation_field(short_core(), o);
  const ScalarField b = perturbation_field(short_core(), o);
  EXPECT_EQ(a, b);
  o.seed = 43;
  EXPECT_NE(a, perturbation_field(short_core(), o));
  EXPECT_LE(a.max_abs(), o.perturbation_amplitude);
}

TEST(Estimator, ZeroPerturbationHasNothingToMeasure) {
  SpectralEstimateOptions o;
  o.perturbation_amplitude = 0.0;
  const SpectralEstimate e = estimate_spectral_radius_numerical(short_core(), PinGeometry{}, 1.0, o);
  EXPECT_FALSE(e.rho.has_value());
}

TEST(Trace, AsymptoticRatio) {
  IterationTrace t;
  for (double e : {8.0, 4.0, 2.0, 1.0}) t.push(e, 1.0);
  EXPECT_FALSE(t.records[0].ratio.has_value());
  EXPECT_NEAR(*t.asymptotic_ratio(3), 0.5, 1e-15);
  EXPECT_FALSE(t.asymptotic_ratio(4).has_value());
  EXPECT_STREQ(to_string(IterationStatus::kDiverged), "diverged");
}
