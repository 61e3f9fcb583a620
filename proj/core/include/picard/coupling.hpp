#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "picard/core_model.hpp"
#include "picard/field.hpp"
#include "picard/quadrature.hpp"
#include "picard/transport.hpp"

namespace picard {

enum class IterationStatus { kConverged, kDiverged, kMaxIterations };

const char* to_string(IterationStatus status) noexcept;

struct TraceRecord {
  int iteration = 0;
  double error = 0.0;  // K
  double k_eff = 0.0;
  std::optional<double> ratio;  // error / previous error, from the second record on
};

struct IterationTrace {
  std::vector<TraceRecord> records;
  IterationStatus status = IterationStatus::kMaxIterations;

  void push(double error, double k_eff);
  int iterations() const noexcept { return static_cast<int>(records.size()); }
  // Geometric mean of the last `window` ratios; nullopt if fewer exist or
  // any of them is not positive.
  std::optional<double> asymptotic_ratio(int window) const;
};

struct CoupledSolution {
  ScalarField phi;
  ScalarField t_fuel;
  ScalarField t_m;
  double k_eff = 0.0;
  IterationTrace trace;
};

struct PicardOptions {
  double tol = 1e-7;  // K, on the max-norm temperature update
  int max_iter = 500;
  // Divergence is declared once the update exceeds divergence_cap * ΔT and is
  // still growing. Unstable cases saturate into a period-two oscillation of
  // roughly 0.3 ΔT amplitude, so the cap must sit well below that.
  double divergence_cap = 0.1;
  EigenOptions eigen;
};

// The unrelaxed fixed-point map T -> T* of one Picard step: a converged
// k-eigenvalue solve at Σ(T), flux normalization to q'_0, an optional axial
// coolant update, then the lagged fuel temperature. Keeps the last transport
// solution to warm-start the next call.
class FixedPointMap {
 public:
  FixedPointMap(const ReactorConfig& config, const PinGeometry& pin, EigenOptions eigen = {});

  ScalarField operator()(const ScalarField& t_fuel);

  const ReactorConfig& config() const noexcept { return config_; }
  const BaseState& base() const noexcept { return base_; }
  const EigenSolution& last_transport() const noexcept { return last_; }
  const ScalarField& last_coolant() const noexcept { return t_m_; }
  // Coolant field at nominal, spatially flat power.
  ScalarField nominal_coolant() const;

 private:
  ReactorConfig config_;
  PinGeometry pin_;
  BaseState base_;
  Quadrature quad_;
  EigenOptions eigen_;
  EigenSolution last_;
  ScalarField t_m_;
  bool have_guess_ = false;
};

// Nominal operating temperature plus a 1 K seed in the slowest reflective
// (or periodic) mode. Without the seed a constant-coolant case starts on its
// flat fixed point and no instability is visible.
ScalarField default_initial_temperature(const ReactorConfig& config, const PinGeometry& pin);

// T^{k+1} = ω T* + (1 - ω) T^k until converged, diverged or max_iter.
// Temperature excursions and transport failures propagate as exceptions.
CoupledSolution picard_solve(const ReactorConfig& config, const PinGeometry& pin, double omega,
                             const std::optional<ScalarField>& init = std::nullopt,
                             const PicardOptions& options = {});

// Depth-one Anderson mixing of fixed-point iterates.
class Aa1Mixer {
 public:
  // Next iterate given the current iterate x and its image g(x).
  std::vector<double> next(std::span<const double> x, std::span<const double> gx);

  int degenerate_steps() const noexcept { return degenerate_; }
  // Mixing coefficient of the most recent Anderson step.
  double last_theta() const noexcept { return theta_; }

 private:
  std::vector<double> prev_residual_;
  std::vector<double> prev_image_;
  int degenerate_ = 0;
  double theta_ = 0.0;
};

// Same outer loop as picard_solve with the temperature update replaced by an
// AA-1 step; the first step is plain Picard, and a step with identical
// consecutive residuals falls back to plain Picard.
CoupledSolution aa1_solve(const ReactorConfig& config, const PinGeometry& pin,
                          const std::optional<ScalarField>& init = std::nullopt,
                          const PicardOptions& options = {});

enum class PerturbationShape {
  kSlowestMode,               // δ cos(ξ_1 Σ_t0 x)
  kSlowestPlusHighFrequency,  // δ [cos(ξ_1 Σ_t0 x) + (-1)^i] / 2
  kRandom,                    // δ U(-1, 1) per cell, seeded
};

struct SpectralEstimateOptions {
  // Kept small: the coupled map is visibly nonlinear above a few kelvin.
  double perturbation_amplitude = 1e-2;  // K
  int window = 10;
  PerturbationShape shape = PerturbationShape::kSlowestPlusHighFrequency;
  std::uint64_t seed = 0;  // kRandom only
  int max_iter = 400;
  // Stop once the error leaves [decay_floor, growth_limit] (K).
  double growth_limit = 10.0;
  double decay_floor = 1e-8;
  double max_spread = 0.05;
  // Relaxed run used to locate the fixed point.
  double reference_omega = 0.1;
  double reference_tol = 1e-10;
  int reference_max_iter = 5000;
  EigenOptions eigen{.tol = 1e-12};
};

struct SpectralEstimate {
  std::optional<double> rho;  // nullopt: no error to track
  double spread = 0.0;
  int samples = 0;
  IterationTrace trace;  // errors are distances to the fixed point
  ScalarField fixed_point;
  // Signed deviation from the fixed point at the first cell and at the cell
  // just below mid-core, per iteration (index 0 is the initial perturbation).
  std::vector<double> edge_error;
  std::vector<double> mid_error;
};

ScalarField perturbation_field(const ReactorConfig& config, const SpectralEstimateOptions& options);

// Perturb-and-track measurement of the asymptotic error amplification at
// relaxation ω. Throws NonAsymptoticError when the ratios over the window
// spread by more than options.max_spread.
SpectralEstimate estimate_spectral_radius_numerical(const ReactorConfig& config,
                                                    const PinGeometry& pin, double omega,
                                                    const SpectralEstimateOptions& options = {});

}  // namespace picard
