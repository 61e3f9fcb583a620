#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "picard/errors.hpp"
#include "picard/fourier.hpp"

using namespace picard;

namespace {

FAParams reference(double length = 150.0, double delta_t = 257.3) {
  FAParams p;
  p.delta_t_fc = delta_t;
  p.r_sigma_f1 = -1.99e-5;
  p.r_sigma_a1 = 8.67e-6;
  p.c0 = 0.96;
  p.sigma_t0_L = 0.718 * length;
  return p;
}

// Independent evaluation of the unrelaxed slowest-mode gain, in long double
// and written from the closed form rather than through the library.
long double oracle_gain(long double omega, long double delta_t, long double length) {
  const long double xi = std::numbers::pi_v<long double> / (0.718L * length);
  const long double rho = std::atan(xi) / xi;
  const long double ratio = rho / (1.0L - rho);
  const long double rf = -1.99e-5L, ra = 8.67e-6L;
  const long double bracket = delta_t * (rf - (ra - rf) * 0.04L * ratio);
  return 1.0L - omega * (1.0L - bracket);
}

template <class F>
double bisect(F f, double lo, double hi) {
  const bool lo_negative = f(lo) < 0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(RhoPi, SlowestModeAtFiftyCentimetres) {
  const double xi = std::numbers::pi / (0.718 * 50.0);
  EXPECT_NEAR(xi, 0.087509, 1e-6);
  EXPECT_NEAR(rho_pi(0.087509), 0.997460, 1e-6);
  EXPECT_NEAR(rho_pi(0.087509), rho_pi_by_quadrature(0.087509), 1e-12);
}

TEST(RhoPi, QuadratureOracleAtLargeXi) {
  EXPECT_NEAR(rho_pi_by_quadrature(10.0, 64), std::atan(10.0) / 10.0, 1e-10);
}

TEST(RhoPi, QuadratureAgreesAcrossRange) {
  for (double xi : {1e-4, 1e-3, 0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 100.0, 1000.0}) {
    EXPECT_NEAR(rho_pi(xi), rho_pi_by_quadrature(xi), 1e-10) << xi;
  }
  EXPECT_EQ(rho_pi_by_quadrature(0.0), 1.0);
  EXPECT_EQ(rho_pi(0.0), 1.0);
}

TEST(RhoPi, SeriesMatchesClosedFormNearSwitchover) {
  for (double xi : {0.0099, 0.0101, 0.02}) {
    const long double ld = 1.0L - std::atan(static_cast<long double>(xi)) / xi;
    EXPECT_NEAR(one_minus_rho_pi(xi) / static_cast<double>(ld), 1.0, 1e-9) << xi;
  }
  EXPECT_NEAR(one_minus_rho_pi(1e-6) / (1e-12 / 3.0), 1.0, 1e-10);
}

TEST(RhoPi, IsDecreasingAndBounded) {
  double prev = 1.0;
  for (double xi = 0.01; xi < 50.0; xi *= 1.3) {
    const double r = rho_pi(xi);
    EXPECT_LT(r, prev);
    EXPECT_GT(r, 0.0);
    prev = r;
  }
  EXPECT_THROW(rho_pi(-1.0), std::invalid_argument);
}

TEST(FeedbackRatio, DiffusionLimitRelativeDifference) {
  auto rel = [](double xi) {
    const double exact = feedback_ratio(xi);
    return std::abs(exact - feedback_ratio(xi, FeedbackApprox::kDiffusion)) / exact;
  };
  // Leading behaviour: R = 3/xi^2 + 4/5 + O(xi^2).
  EXPECT_NEAR(feedback_ratio(1e-3) - 3e6, 0.8, 1e-3);
  EXPECT_LT(rel(0.19), 0.01);
  EXPECT_NEAR(rel(0.2), 0.01045, 1e-4);
  // The one-percent crossing sits just below 0.2.
  const double crossing = bisect([&](double xi) { return rel(xi) - 0.01; }, 0.1, 0.3);
  EXPECT_GT(crossing, 0.19);
  EXPECT_LT(crossing, 0.2);
  EXPECT_GT(rel(1.0), 0.01);
}

TEST(FeedbackRatio, SlowestModeAtReferenceHeight) {
  const double xi1 = mode_xi(reference(), 1);
  EXPECT_NEAR(xi1, 0.0291698, 1e-7);
  EXPECT_NEAR(feedback_ratio(xi1), 3526.0, 1.0);
  const long double x = xi1;
  const long double r = std::atan(x) / x;
  EXPECT_NEAR(feedback_ratio(xi1), static_cast<double>(r / (1.0L - r)), 1e-8);
}

TEST(PicardGain, ReferenceSlowestModeIsOscillatory) {
  const FAParams p = reference();
  const double g = picard_gain(FourierMode::at(mode_xi(p, 1)), 1.0, p);
  EXPECT_NEAR(g, -1.042, 0.005);
  EXPECT_NEAR(g, static_cast<double>(oracle_gain(1.0L, 257.3L, 150.0L)), 1e-10);
}

TEST(PicardGain, AsymptoteAtTwoThirds) {
  const FAParams p = reference();
  EXPECT_NEAR(picard_gain(FourierMode::asymptote(), 0.66, p), 1.0 - 0.66 * (1.0 + 257.3 * 1.99e-5),
              1e-14);
  EXPECT_NEAR(picard_gain(FourierMode::asymptote(), 0.66, p), 0.3366, 0.001);
}

TEST(PicardGain, AffineInOmega) {
  const FAParams p = reference();
  for (FourierMode m : {FourierMode::asymptote(), FourierMode::at(0.03), FourierMode::at(2.0)}) {
    const double g0 = picard_gain(m, 0.0, p);
    const double g1 = picard_gain(m, 1.0, p);
    EXPECT_EQ(g0, 1.0);
    for (double w : {0.1, 0.37, 0.66, 0.9}) {
      EXPECT_NEAR(picard_gain(m, w, p), (1.0 - w) * g0 + w * g1, 1e-13);
    }
  }
  EXPECT_THROW(picard_gain(FourierMode::asymptote(), -0.1, p), std::invalid_argument);
}

TEST(SpectralRadius, ReferenceUnrelaxed) {
  const SpectralRadius r = spectral_radius_fa(reference(), 1.0);
  EXPECT_NEAR(r.rho, 1.042, 0.005);
  EXPECT_EQ(r.mode, 1);
  EXPECT_LT(r.gain, 0.0);
}

TEST(SpectralRadius, ShortCore) {
  const SpectralRadius r = spectral_radius_fa(reference(50.0), 1.0);
  EXPECT_NEAR(r.rho, 0.121, 0.002);
  EXPECT_NEAR(r.rho, std::abs(static_cast<double>(oracle_gain(1.0L, 257.3L, 50.0L))), 1e-10);
}

TEST(SpectralRadius, CalibratedTemperatureDifference) {
  // Invert the slowest-mode gain for ρ = 1.042 at L = 150 cm.
  const double dt = bisect(
      [](double d) { return -static_cast<double>(oracle_gain(1.0L, d, 150.0L)) - 1.042; }, 100.0,
      400.0);
  EXPECT_NEAR(dt, 257.3, 0.1);
  EXPECT_NEAR(delta_t_for_unrelaxed_radius(reference(), 1.042), dt, 1e-6);
}

TEST(SpectralRadius, CriticalHeight) {
  const double l_crit = bisect(
      [](double l) { return -static_cast<double>(oracle_gain(1.0L, 257.3L, l)) - 1.0; }, 50.0,
      300.0);
  EXPECT_GT(l_crit, 140.0);
  EXPECT_LT(l_crit, 155.0);
  EXPECT_LT(spectral_radius_fa(reference(l_crit - 0.01), 1.0).rho, 1.0);
  EXPECT_GT(spectral_radius_fa(reference(l_crit + 0.01), 1.0).rho, 1.0);
}

TEST(SpectralRadius, OpticalThicknessIsTheOnlyGeometricInput) {
  FAParams a = reference();
  FAParams b = reference();
  b.sigma_t0_L = (0.718 * 2.0) * (150.0 / 2.0);
  EXPECT_EQ(spectral_radius_fa(a, 0.7).rho, spectral_radius_fa(b, 0.7).rho);
  EXPECT_EQ(omega_opt(a), omega_opt(b));
}

TEST(SpectralRadius, PeriodicDoublesModeSpacing) {
  FAParams p = reference();
  p.boundary_factor = 2;
  EXPECT_NEAR(mode_xi(p, 1), 2.0 * std::numbers::pi / (0.718 * 150.0), 1e-15);
  FAParams half = reference(75.0);
  EXPECT_NEAR(spectral_radius_fa(p, 1.0).rho, spectral_radius_fa(half, 1.0).rho, 1e-12);
}

TEST(OmegaOpt, ReferenceValue) {
  const FAParams p = reference();
  const double w = omega_opt(p);
  EXPECT_NEAR(w, 0.66, 0.005);
  const RelaxationBranches b = relaxation_branches(p, w);
  EXPECT_NEAR(b.asymptotic, b.slowest, 1e-12);
  // Optimal in a neighbourhood.
  const double rho = spectral_radius_fa(p, w).rho;
  EXPECT_LT(rho, spectral_radius_fa(p, w - 0.01).rho);
  EXPECT_LT(rho, spectral_radius_fa(p, w + 0.01).rho);
  EXPECT_NEAR(rho, 0.337, 0.01);
}

TEST(OmegaOpt, ShorterCoreNeedsLessRelaxation) {
  const double w50 = omega_opt(reference(50.0));
  const double w150 = omega_opt(reference(150.0));
  EXPECT_GT(w50, 0.66);
  EXPECT_LT(w50, 1.0);
  EXPECT_GT(w50, w150);
}

TEST(OmegaOpt, DecreasesWithHeight) {
  double prev = 2.0;
  for (double l = 50.0; l <= 300.0; l += 10.0) {
    const double w = omega_opt(reference(l));
    EXPECT_LT(w, prev) << l;
    prev = w;
  }
}

TEST(OmegaOpt, NoValidRelaxation) {
  FAParams p = reference();
  p.r_sigma_f1 = -0.05;  // bracket below -1 on the asymptote, positive ratio term below
  p.r_sigma_a1 = -0.2;
  EXPECT_THROW(omega_opt(p), NoValidRelaxationError);
}

TEST(FAParams, Validation) {
  FAParams p = reference();
  p.c0 = 1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = reference();
  p.sigma_t0_L = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = reference();
  p.boundary_factor = 3;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(FourierMode, Asymptote) {
  EXPECT_TRUE(FourierMode::asymptote().is_asymptote());
  EXPECT_THROW(FourierMode::asymptote().xi(), std::logic_error);
  EXPECT_THROW(FourierMode::at(-1.0), std::invalid_argument);
  EXPECT_EQ(FourierMode::at(0.5).xi(), 0.5);
}
