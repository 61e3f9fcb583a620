#pragma once

#include "picard/core_model.hpp"

namespace picard {

// Minimal parameter tuple of the closed-form Picard convergence analysis.
struct FAParams {
  double delta_t_fc = 0.0;  // T0 - T_m, K
  double r_sigma_f1 = 0.0;  // Σ_f1 / Σ_f0, K^-1
  double r_sigma_a1 = 0.0;  // Σ_a1 / Σ_a0, K^-1
  double c0 = 0.0;
  double sigma_t0_L = 0.0;  // optical thickness of the core
  int boundary_factor = 1;  // 1 reflective, 2 periodic

  void validate() const;

  static FAParams from_config(const ReactorConfig& config, const BaseState& base);
};

// A Fourier error mode: a finite ξ or the ξ -> ∞ limit, where the transport
// response vanishes.
class FourierMode {
 public:
  static FourierMode at(double xi);
  static FourierMode asymptote() noexcept { return FourierMode(); }

  bool is_asymptote() const noexcept { return asymptote_; }
  double xi() const;  // throws std::logic_error for the asymptote

 private:
  FourierMode() = default;
  double xi_ = 0.0;
  bool asymptote_ = true;
};

// Power-iteration mode gain atan(ξ)/ξ; 1 at ξ = 0.
double rho_pi(double xi);
// 1 - atan(ξ)/ξ without cancellation for small ξ.
double one_minus_rho_pi(double xi);

// ½∫ dμ / (1 + iξμ) over [-1, 1] by composite Gauss-Legendre with panels
// graded geometrically towards μ = 0 (the integrand's near-pole for large ξ).
// `n_points` is the per-panel order (even, 16..64). Throws IntegrationError
// if the imaginary part does not cancel.
double rho_pi_by_quadrature(double xi, int n_points = 64);

enum class FeedbackApprox { kExact, kDiffusion };

// ρ_PI / (1 - ρ_PI), or its small-ξ limit 3/ξ².
double feedback_ratio(double xi, FeedbackApprox approx = FeedbackApprox::kExact);

// ξ_j = boundary_factor π j / (Σ_t0 L).
double mode_xi(const FAParams& p, int j);

// Signed per-iteration gain of relaxed Picard iteration for one mode.
double picard_gain(FourierMode mode, double omega, const FAParams& p);

struct SpectralRadius {
  double rho = 0.0;
  double gain = 0.0;  // signed gain of the maximizing mode
  int mode = 0;       // j of the maximizing mode; 0 for the ξ -> ∞ limit

  bool asymptotic() const noexcept { return mode == 0; }
};

// max |gain| over j = 1..n_modes and the ξ -> ∞ limit. Ties keep the lowest j.
SpectralRadius spectral_radius_fa(const FAParams& p, double omega, int n_modes = 64);

// The two competing branches of the relaxed spectral radius: the ξ -> ∞
// value 1 - ω(1 - ΔT Σ_f1/Σ_f0) and the slowest-mode value -gain(ξ_1).
struct RelaxationBranches {
  double asymptotic = 0.0;
  double slowest = 0.0;
};
RelaxationBranches relaxation_branches(const FAParams& p, double omega);

// Unrelaxed spectral radius taken at the slowest mode, -gain(ξ_1, ω = 1).
double unrelaxed_radius(const FAParams& p);

// Relaxation factor equalizing both branches. Throws NoValidRelaxationError
// when the closed form's denominator is nonpositive.
double omega_opt(const FAParams& p);

// ΔT for which unrelaxed_radius equals `rho` (p.delta_t_fc is ignored).
double delta_t_for_unrelaxed_radius(FAParams p, double rho);

}  // namespace picard
