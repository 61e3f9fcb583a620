#include "picard/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "picard/errors.hpp"
#include "picard/quadrature.hpp"

namespace picard {
namespace {

void require(bool ok, const char* field, const char* message) {
  if (!ok) throw ConfigError(field, message);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

ScalarField::ScalarField(std::vector<double> values, double cell_width)
    : values_(std::move(values)), width_(cell_width) {
  if (!(cell_width > 0.0)) throw std::invalid_argument("ScalarField: cell width must be positive");
}

ScalarField ScalarField::uniform(std::size_t n_cells, double cell_width, double value) {
  return ScalarField(std::vector<double>(n_cells, value), cell_width);
}

double ScalarField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::mean() const noexcept {
  if (values_.empty()) return 0.0;
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

bool ScalarField::same_grid(const ScalarField& other) const noexcept {
  return values_.size() == other.values_.size() && width_ == other.width_;
}

double max_abs_difference(const ScalarField& a, const ScalarField& b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_difference: grid mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void ReactorConfig::validate() const {
  require(finite_positive(sigma_t0), "sigma_t0", "must be > 0");
  require(std::isfinite(c0) && c0 >= 0.0 && c0 < 1.0, "c0", "must satisfy 0 <= c0 < 1");
  require(finite_positive(nu_sigma_f0), "nu_sigma_f0", "must be > 0");
  require(std::isfinite(r_sigma_f1), "r_sigma_f1", "must be finite");
  require(std::isfinite(r_sigma_a1), "r_sigma_a1", "must be finite");
  require(finite_positive(nu), "nu", "must be > 0");
  require(finite_positive(kappa), "kappa", "must be > 0");
  require(q_prime_0.has_value() != delta_t_fc.has_value(), "q_prime_0",
          "exactly one of q_prime_0 and delta_t_fc must be given");
  if (q_prime_0) require(std::isfinite(*q_prime_0) && *q_prime_0 >= 0.0, "q_prime_0", "must be >= 0");
  if (delta_t_fc) {
    require(std::isfinite(*delta_t_fc) && *delta_t_fc >= 0.0, "delta_t_fc", "must be >= 0");
  }
  require(finite_positive(t_m), "t_m", "must be > 0");
  require(finite_positive(core_height_L), "core_height_L", "must be > 0");
  require(n_cells >= 2, "n_cells", "must be >= 2");
  require(n_angles >= 2 && n_angles % 2 == 0 && n_angles <= kMaxQuadratureOrder, "n_angles",
          "must be even and in [2, 64]");
  if (mdot_cp) require(finite_positive(*mdot_cp), "mdot_cp", "must be > 0");
}

void PinGeometry::validate() const {
  require(finite_positive(r_fo), "r_fo", "must be > 0");
  require(std::isfinite(r_ci) && r_ci > r_fo, "r_ci", "must exceed r_fo");
  require(std::isfinite(r_co) && r_co > r_ci, "r_co", "must exceed r_ci");
  require(finite_positive(k_f), "k_f", "must be > 0");
  require(finite_positive(k_c), "k_c", "must be > 0");
  require(finite_positive(h_g), "h_g", "must be > 0");
  require(finite_positive(h), "h", "must be > 0");
}

double PinGeometry::thermal_resistance() const noexcept {
  using std::numbers::pi;
  const double r_gap = 0.5 * (r_ci + r_fo);
  return 1.0 / (8.0 * pi * k_f) + 1.0 / (2.0 * pi * r_gap * h_g) +
         std::log(r_co / r_ci) / (2.0 * pi * k_c) + 1.0 / (2.0 * pi * r_co * h);
}

double PinGeometry::fuel_area() const noexcept { return std::numbers::pi * r_fo * r_fo; }

BaseState derive_base_state(const ReactorConfig& config, const PinGeometry& pin) {
  config.validate();
  pin.validate();

  BaseState s;
  s.sigma_t0 = config.sigma_t0;
  s.sigma_s0 = config.c0 * config.sigma_t0;
  s.sigma_a0 = config.sigma_t0 * (1.0 - config.c0);
  s.nu_sigma_f0 = config.nu_sigma_f0;
  s.sigma_f0 = config.nu_sigma_f0 / config.nu;
  s.k_eff0 = config.nu_sigma_f0 / s.sigma_a0;
  s.r_t = pin.thermal_resistance();
  s.power_factor = pin.fuel_area() * config.kappa;
  s.a_coeff = s.power_factor * s.r_t;

  if (config.q_prime_0) {
    s.q_prime_0 = *config.q_prime_0;
    s.delta_t_fc = s.q_prime_0 * s.r_t;
  } else {
    s.delta_t_fc = *config.delta_t_fc;
    s.q_prime_0 = s.delta_t_fc / s.r_t;
  }
  s.phi0 = s.q_prime_0 / (s.power_factor * s.sigma_f0);
  s.t0 = config.t_m + s.delta_t_fc;
  s.gamma = (1.0 - config.c0) * (config.r_sigma_a1 - config.r_sigma_f1) * s.phi0;

  require(finite_positive(s.sigma_a0), "c0", "derived sigma_a0 is nonpositive");
  require(finite_positive(s.sigma_f0), "nu", "derived sigma_f0 is nonpositive");
  require(finite_positive(s.r_t), "h", "derived thermal resistance is nonpositive");
  require(finite_positive(s.a_coeff), "kappa", "derived A coefficient is nonpositive");
  require(std::isfinite(s.phi0) && s.phi0 >= 0.0, "q_prime_0", "derived phi0 is negative");
  return s;
}

CrossSections CrossSections::uniform(std::size_t n_cells, double sigma_t, double sigma_s,
                                     double sigma_f, double nu_sigma_f) {
  CrossSections xs;
  xs.sigma_t.assign(n_cells, sigma_t);
  xs.sigma_s.assign(n_cells, sigma_s);
  xs.sigma_f.assign(n_cells, sigma_f);
  xs.nu_sigma_f.assign(n_cells, nu_sigma_f);
  return xs;
}

CrossSections xs_at_temperature(const BaseState& base, const ReactorConfig& config,
                                const ScalarField& t_field) {
  const std::size_t n = t_field.size();
  CrossSections xs;
  xs.sigma_t.resize(n);
  xs.sigma_s.assign(n, base.sigma_s0);
  xs.sigma_f.resize(n);
  xs.nu_sigma_f.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = t_field[i] - base.t0;
    const double f_factor = 1.0 + config.r_sigma_f1 * dt;
    const double a_factor = 1.0 + config.r_sigma_a1 * dt;
    if (!(f_factor > 0.0)) throw TemperatureExcursionError(i, t_field[i], "fission");
    if (!(a_factor > 0.0)) throw TemperatureExcursionError(i, t_field[i], "absorption");
    // Σ_t1 = Σ_a1, written so that T = T0 returns Σ_t0 bit-for-bit.
    xs.sigma_t[i] = base.sigma_t0 + base.sigma_a0 * config.r_sigma_a1 * dt;
    xs.sigma_f[i] = base.sigma_f0 * f_factor;
    xs.nu_sigma_f[i] = base.nu_sigma_f0 * f_factor;
  }
  return xs;
}

double dd_optical_ratio(const ReactorConfig& config) {
  const Quadrature q = gauss_legendre(config.n_angles);
  double mu_min = 1.0;
  for (double mu : q.mu) mu_min = std::min(mu_min, std::abs(mu));
  return config.sigma_t0 * config.cell_width() / (2.0 * mu_min);
}

}  // namespace picard
