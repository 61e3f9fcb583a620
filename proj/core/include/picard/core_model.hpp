#pragma once

#include <optional>
#include <vector>

#include "picard/field.hpp"

namespace picard {

enum class BoundaryCondition { kReflective, kPeriodic };

enum class CoolantMode {
  kConstant,  // T_m fixed everywhere
  kAxial,     // cumulative heat balance from an inlet at t_m
};

// User-facing reactor inputs. Defaults reproduce the typical-PWR reference
// case: one-group data, calibrated fuel-coolant temperature difference and a
// 150 cm core.
struct ReactorConfig {
  double sigma_t0 = 0.718;        // cm^-1
  double c0 = 0.96;               // Σ_s0 / Σ_t0
  double nu_sigma_f0 = 0.0297;    // cm^-1
  double r_sigma_f1 = -1.99e-5;   // Σ_f1 / Σ_f0, K^-1
  double r_sigma_a1 = 8.67e-6;    // Σ_a1 / Σ_a0, K^-1
  double nu = 2.43;
  double kappa = 3.204e-11;       // J per fission
  // Exactly one of the two sets the operating power level.
  std::optional<double> q_prime_0;             // W/cm
  std::optional<double> delta_t_fc = 257.3;    // K
  double t_m = 580.0;             // K
  double core_height_L = 150.0;   // cm
  int n_cells = 300;
  int n_angles = 12;
  BoundaryCondition bc_mode = BoundaryCondition::kReflective;
  CoolantMode coolant_mode = CoolantMode::kConstant;
  // Coolant heat capacity flow rate (W/K); axial mode only. Unset means a
  // 30 K rise over the core at nominal power.
  std::optional<double> mdot_cp;

  // Throws ConfigError naming the first offending field.
  void validate() const;

  double cell_width() const noexcept { return core_height_L / n_cells; }
};

struct PinGeometry {
  double r_fo = 0.4096;  // cm
  double r_ci = 0.418;
  double r_co = 0.475;
  double k_f = 0.03;     // W/cm-K
  double k_c = 0.17;     // W/cm-K
  double h_g = 0.5;      // W/cm^2-K
  double h = 3.4;        // W/cm^2-K

  void validate() const;

  // Lumped fuel-to-coolant resistance: fuel conduction, gap, cladding and
  // film terms in series (cm-K/W).
  double thermal_resistance() const noexcept;
  // π r_fo²
  double fuel_area() const noexcept;
};

// Constants of the coupled system at its nominal operating point.
struct BaseState {
  double sigma_t0 = 0.0;
  double sigma_s0 = 0.0;
  double sigma_a0 = 0.0;
  double sigma_f0 = 0.0;
  double nu_sigma_f0 = 0.0;
  double k_eff0 = 0.0;
  double r_t = 0.0;         // cm-K/W
  double a_coeff = 0.0;     // π r_fo² κ R_t
  double q_prime_0 = 0.0;   // W/cm
  double phi0 = 0.0;        // cm^-2 s^-1
  double delta_t_fc = 0.0;  // T0 - T_m, K
  double t0 = 0.0;          // K
  double gamma = 0.0;       // (1 - c0)(Σ_a1/Σ_a0 - Σ_f1/Σ_f0) φ0
  double power_factor = 0.0;  // π r_fo² κ, so that q' = power_factor Σ_f φ
};

BaseState derive_base_state(const ReactorConfig& config, const PinGeometry& pin);

struct CrossSections {
  std::vector<double> sigma_t;
  std::vector<double> sigma_s;
  std::vector<double> sigma_f;
  std::vector<double> nu_sigma_f;

  std::size_t size() const noexcept { return sigma_t.size(); }

  static CrossSections uniform(std::size_t n_cells, double sigma_t, double sigma_s,
                               double sigma_f, double nu_sigma_f);

  friend bool operator==(const CrossSections&, const CrossSections&) = default;
};

// Linear temperature model around T0; Σ_s carries no temperature dependence
// so Σ_t moves with Σ_a. Throws TemperatureExcursionError when any cell's
// fission or absorption cross section becomes nonpositive.
CrossSections xs_at_temperature(const BaseState& base, const ReactorConfig& config,
                                const ScalarField& t_field);

// Σ_t h / (2 μ_min) for the configured mesh and quadrature. Diamond
// difference stays positive for arbitrary nonnegative sources only when this
// is below one.
double dd_optical_ratio(const ReactorConfig& config);

}  // namespace picard
