#pragma once

#include "picard/core_model.hpp"
#include "picard/field.hpp"

namespace picard {

// q'(x) = π r_fo² κ Σ_f(x) φ(x), cell-wise.
ScalarField linear_power(const ScalarField& phi, const CrossSections& xs, const PinGeometry& pin,
                         double kappa);

// Lagged fuel temperature T*(x) = T_m(x) + A Σ_f(x) φ(x), with Σ_f taken from
// the previous temperature iterate. No inner nonlinear solve.
ScalarField fuel_temperature(const ScalarField& phi, const CrossSections& xs, const BaseState& base,
                             const ScalarField& t_m_field);

// Cumulative coolant heat balance: the coolant at the centre of cell i has
// absorbed the power of every upstream cell plus half of cell i.
ScalarField coolant_axial(const ScalarField& q_prime, double t_inlet, double mdot_cp);

// Coolant heat-capacity flow rate used in axial mode: the configured value,
// or the one giving a 30 K rise over the core at nominal power.
double coolant_flow_capacity(const ReactorConfig& config, const BaseState& base);

inline constexpr double kDefaultCoolantRise = 30.0;  // K

}  // namespace picard
