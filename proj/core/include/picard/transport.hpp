#pragma once

#include <optional>
#include <vector>

#include "picard/core_model.hpp"
#include "picard/field.hpp"
#include "picard/quadrature.hpp"

namespace picard {

// One diamond-difference cell update along a single ordinate. `emission` is
// the isotropic emission density; the angular source is emission / 2.
struct CellStep {
  double psi_out;
  double psi_avg;
};
CellStep dd_cell_step(double sigma_t, double h, double mu_abs, double psi_in, double emission);

// One full transport sweep: scalar flux produced by the isotropic emission
// density `source` in a medium with total cross section xs.sigma_t. Boundary
// fluxes are resolved exactly within the sweep (reflective: outgoing flux
// re-enters along the mirror ordinate; periodic: it re-enters at the other
// face), so the map source -> flux is linear.
ScalarField dd_sweep(const CrossSections& xs, const ScalarField& source, const Quadrature& quad,
                     BoundaryCondition bc);

struct FixedSourceOptions {
  double tol = 1e-10;
  int max_iter = 5000;
};

struct FixedSourceSolution {
  ScalarField phi;
  int iterations = 0;
  // Max-norm relative change of the scalar flux at each iteration.
  std::vector<double> changes;
};

// Source iteration on the scattering term with a fixed emission density
// (typically the fission source). Throws ConvergenceError at max_iter.
FixedSourceSolution solve_fixed_source(const CrossSections& xs, const ScalarField& fixed_source,
                                       const Quadrature& quad, BoundaryCondition bc,
                                       const FixedSourceOptions& options = {});

enum class EigenMethod {
  // One sweep per outer iteration with the scattering and fission sources
  // both lagged. Mode gain atan(ξ)/ξ; slow for large cores.
  kPower,
  // Power iteration with a Wielandt shift; each outer solves the shifted
  // diamond-difference system directly through its dense response matrix.
  kWielandt,
};

struct EigenOptions {
  double tol = 1e-10;
  int max_iter = 100000;
  EigenMethod method = EigenMethod::kWielandt;
  // Shift eigenvalue is placed at k (1 + shift_offset) once k has settled.
  double shift_offset = 2e-3;
};

// Core-average linear power target: mean_i(power_factor * Σ_f,i * φ_i) == q_prime.
struct PowerNormalization {
  double q_prime = 0.0;
  double power_factor = 0.0;
};

struct EigenGuess {
  double k_eff = 1.0;
  ScalarField phi;
};

struct EigenSolution {
  double k_eff = 0.0;
  ScalarField phi;
  int iterations = 0;
  bool converged = false;
  // Max-norm relative change of the (unit-normalized) flux per outer iteration.
  std::vector<double> changes;
};

// k-eigenvalue solve. Without a guess, starts from a flat flux and k = 1.
// Throws ConvergenceError at max_iter and std::invalid_argument for a
// nonpositive target power.
EigenSolution solve_k_eigenvalue(const CrossSections& xs, const Quadrature& quad,
                                 BoundaryCondition bc, double cell_width,
                                 const PowerNormalization& norm, const EigenOptions& options = {},
                                 const std::optional<EigenGuess>& guess = std::nullopt);

// Total fission production (ν Σ_f φ h summed) and absorption ((Σ_t - Σ_s) φ h
// summed) of a flux; with reflective boundaries production / k == absorption.
struct NeutronBalance {
  double production = 0.0;
  double absorption = 0.0;
};
NeutronBalance neutron_balance(const CrossSections& xs, const ScalarField& phi);

}  // namespace picard
