#include "picard/thermal.hpp"

#include <stdexcept>

#include "picard/errors.hpp"

namespace picard {

ScalarField linear_power(const ScalarField& phi, const CrossSections& xs, const PinGeometry& pin,
                         double kappa) {
  if (xs.size() != phi.size()) throw std::invalid_argument("linear_power: grid mismatch");
  const double factor = pin.fuel_area() * kappa;
  ScalarField q = phi;
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = factor * xs.sigma_f[i] * phi[i];
  return q;
}

ScalarField fuel_temperature(const ScalarField& phi, const CrossSections& xs, const BaseState& base,
                             const ScalarField& t_m_field) {
  if (xs.size() != phi.size() || t_m_field.size() != phi.size()) {
    throw std::invalid_argument("fuel_temperature: grid mismatch");
  }
  ScalarField t = t_m_field;
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += base.a_coeff * xs.sigma_f[i] * phi[i];
  return t;
}

ScalarField coolant_axial(const ScalarField& q_prime, double t_inlet, double mdot_cp) {
  if (!(mdot_cp > 0.0)) throw std::invalid_argument("coolant_axial: mdot_cp must be > 0");
  const double h = q_prime.cell_width();
  ScalarField t = q_prime;
  double upstream = 0.0;  // W absorbed before the current cell
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double cell_power = q_prime[i] * h;
    t[i] = t_inlet + (upstream + 0.5 * cell_power) / mdot_cp;
    upstream += cell_power;
  }
  return t;
}

double coolant_flow_capacity(const ReactorConfig& config, const BaseState& base) {
  if (config.mdot_cp) return *config.mdot_cp;
  const double value = base.q_prime_0 * config.core_height_L / kDefaultCoolantRise;
  if (!(value > 0.0)) throw ConfigError("mdot_cp", "cannot default the coolant flow at zero power");
  return value;
}

}  // namespace picard
