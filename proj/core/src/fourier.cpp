#include "picard/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "picard/errors.hpp"
#include "picard/quadrature.hpp"

namespace picard {
namespace {

constexpr double kSeriesThreshold = 1e-2;

void check_omega(double omega) {
  if (!std::isfinite(omega) || omega < 0.0) {
    throw std::invalid_argument("relaxation factor must be finite and >= 0");
  }
}

// Relative-feedback bracket ΔT[Σ_f1/Σ_f0 - (Σ_a1/Σ_a0 - Σ_f1/Σ_f0)(1 - c0) R],
// so that gain = 1 - ω(1 - bracket).
double feedback_bracket(const FAParams& p, double ratio) {
  return p.delta_t_fc *
         (p.r_sigma_f1 - (p.r_sigma_a1 - p.r_sigma_f1) * (1.0 - p.c0) * ratio);
}

}  // namespace

void FAParams::validate() const {
  if (!std::isfinite(delta_t_fc)) throw std::invalid_argument("FAParams: delta_t_fc must be finite");
  if (!std::isfinite(r_sigma_f1) || !std::isfinite(r_sigma_a1)) {
    throw std::invalid_argument("FAParams: temperature coefficients must be finite");
  }
  if (!(c0 >= 0.0 && c0 < 1.0)) throw std::invalid_argument("FAParams: need 0 <= c0 < 1");
  if (!(sigma_t0_L > 0.0) || !std::isfinite(sigma_t0_L)) {
    throw std::invalid_argument("FAParams: sigma_t0_L must be > 0");
  }
  if (boundary_factor != 1 && boundary_factor != 2) {
    throw std::invalid_argument("FAParams: boundary_factor must be 1 or 2");
  }
}

FAParams FAParams::from_config(const ReactorConfig& config, const BaseState& base) {
  FAParams p;
  p.delta_t_fc = base.delta_t_fc;
  p.r_sigma_f1 = config.r_sigma_f1;
  p.r_sigma_a1 = config.r_sigma_a1;
  p.c0 = config.c0;
  p.sigma_t0_L = config.sigma_t0 * config.core_height_L;
  p.boundary_factor = config.bc_mode == BoundaryCondition::kReflective ? 1 : 2;
  p.validate();
  return p;
}

FourierMode FourierMode::at(double xi) {
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw std::invalid_argument("FourierMode: xi must be >= 0");
  FourierMode m;
  m.xi_ = xi;
  m.asymptote_ = false;
  return m;
}

double FourierMode::xi() const {
  if (asymptote_) throw std::logic_error("FourierMode: the asymptotic mode has no finite xi");
  return xi_;
}

double one_minus_rho_pi(double xi) {
  if (!(xi >= 0.0)) throw std::invalid_argument("rho_pi: xi must be >= 0");
  if (xi >= kSeriesThreshold) return 1.0 - std::atan(xi) / xi;
  // ξ²/3 - ξ⁴/5 + ξ⁶/7 - ...
  const double x2 = xi * xi;
  double power = x2;
  double sum = 0.0;
  for (int m = 1; m < 64; ++m) {
    const double term = power / (2.0 * m + 1.0);
    sum += (m % 2 == 1) ? term : -term;
    if (term <= 1e-16 * sum) break;
    power *= x2;
  }
  return sum;
}

double rho_pi(double xi) {
  if (!(xi >= 0.0)) throw std::invalid_argument("rho_pi: xi must be >= 0");
  if (xi == 0.0) return 1.0;
  if (xi < kSeriesThreshold) return 1.0 - one_minus_rho_pi(xi);
  return std::atan(xi) / xi;
}

double rho_pi_by_quadrature(double xi, int n_points) {
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw std::invalid_argument("rho_pi_by_quadrature: xi must be >= 0");
  if (n_points < 16) throw std::invalid_argument("rho_pi_by_quadrature: need at least 16 points");
  if (xi == 0.0) return 1.0;

  const Quadrature rule = gauss_legendre(n_points);
  // Panel edges on [0, 1]: 0, 1/ξ, 2/ξ, 4/ξ, ... , 1.
  std::vector<double> edges{0.0};
  if (xi > 1.0) {
    for (double e = 1.0 / xi; e < 1.0; e *= 2.0) edges.push_back(e);
  }
  edges.push_back(1.0);

  std::complex<double> sum{0.0, 0.0};
  const std::complex<double> i_xi{0.0, xi};
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double mid = 0.5 * (edges[p] + edges[p + 1]);
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double mu = mid + half * rule.mu[k];
      const double w = half * rule.w[k];
      sum += w / (1.0 + i_xi * mu);
      sum += w / (1.0 - i_xi * mu);
    }
  }
  sum *= 0.5;
  if (std::abs(sum.imag()) > 1e-12) {
    throw IntegrationError("rho_pi_by_quadrature: imaginary part " + std::to_string(sum.imag()) +
                           " did not cancel");
  }
  return sum.real();
}

double feedback_ratio(double xi, FeedbackApprox approx) {
  if (!(xi > 0.0)) throw std::invalid_argument("feedback_ratio: xi must be > 0");
  if (approx == FeedbackApprox::kDiffusion) return 3.0 / (xi * xi);
  if (std::isinf(xi)) return 0.0;
  return rho_pi(xi) / one_minus_rho_pi(xi);
}

double mode_xi(const FAParams& p, int j) {
  return p.boundary_factor * std::numbers::pi * j / p.sigma_t0_L;
}

double picard_gain(FourierMode mode, double omega, const FAParams& p) {
  check_omega(omega);
  const double ratio = mode.is_asymptote() ? 0.0 : feedback_ratio(mode.xi());
  return 1.0 - omega * (1.0 - feedback_bracket(p, ratio));
}

SpectralRadius spectral_radius_fa(const FAParams& p, double omega, int n_modes) {
  p.validate();
  check_omega(omega);
  if (n_modes < 1) throw std::invalid_argument("spectral_radius_fa: n_modes must be >= 1");
  SpectralRadius best;
  best.rho = -1.0;
  for (int j = 1; j <= n_modes; ++j) {
    const double g = picard_gain(FourierMode::at(mode_xi(p, j)), omega, p);
    if (std::abs(g) > best.rho) best = {std::abs(g), g, j};
  }
  const double g_inf = picard_gain(FourierMode::asymptote(), omega, p);
  if (std::abs(g_inf) > best.rho) best = {std::abs(g_inf), g_inf, 0};
  return best;
}

RelaxationBranches relaxation_branches(const FAParams& p, double omega) {
  p.validate();
  return {picard_gain(FourierMode::asymptote(), omega, p),
          -picard_gain(FourierMode::at(mode_xi(p, 1)), omega, p)};
}

double unrelaxed_radius(const FAParams& p) { return relaxation_branches(p, 1.0).slowest; }

double omega_opt(const FAParams& p) {
  p.validate();
  const double ratio = feedback_ratio(mode_xi(p, 1));
  const double denominator =
      2.0 - p.delta_t_fc * (2.0 * p.r_sigma_f1 -
                            (p.r_sigma_a1 - p.r_sigma_f1) * (1.0 - p.c0) * ratio);
  if (!(denominator > 0.0)) {
    throw NoValidRelaxationError("omega_opt: nonpositive denominator " + std::to_string(denominator) +
                                 "; the feedback admits no stabilizing relaxation");
  }
  const double omega = 2.0 / denominator;

  const double g_inf = picard_gain(FourierMode::asymptote(), omega, p);
  const double g_slow = picard_gain(FourierMode::at(mode_xi(p, 1)), omega, p);
  const double scale = std::max({1.0, std::abs(g_inf), std::abs(g_slow)});
  if (std::abs(std::abs(g_inf) - std::abs(g_slow)) > 1e-12 * scale) {
    throw std::logic_error("omega_opt: branch magnitudes failed to equalize");
  }
  return omega;
}

double delta_t_for_unrelaxed_radius(FAParams p, double rho) {
  p.delta_t_fc = 1.0;
  const double per_kelvin = unrelaxed_radius(p);
  if (!(per_kelvin > 0.0)) {
    throw std::invalid_argument("delta_t_for_unrelaxed_radius: slowest-mode feedback is not destabilizing");
  }
  return rho / per_kelvin;
}

}  // namespace picard
