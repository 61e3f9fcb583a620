#include "picard/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "picard/errors.hpp"
#include "picard/thermal.hpp"

namespace picard {
namespace {

void check_relaxation(double omega) {
  if (!(omega > 0.0 && omega <= 1.0)) {
    throw std::invalid_argument("relaxation factor must satisfy 0 < omega <= 1");
  }
}

void check_options(const PicardOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("Picard tol must be > 0");
  if (options.max_iter < 1) throw std::invalid_argument("Picard max_iter must be >= 1");
  if (!(options.divergence_cap > options.tol)) {
    throw std::invalid_argument("divergence_cap must exceed tol");
  }
}

ScalarField initial_field(const ReactorConfig& config, const PinGeometry& pin,
                          const std::optional<ScalarField>& init) {
  if (!init) return default_initial_temperature(config, pin);
  if (init->size() != static_cast<std::size_t>(config.n_cells)) {
    throw std::invalid_argument("initial temperature does not match n_cells");
  }
  return ScalarField(std::vector<double>(init->values().begin(), init->values().end()),
                     config.cell_width());
}

// Slowest error mode of the configured boundary condition at cell i.
double slowest_mode(const ReactorConfig& config, std::size_t i) {
  const double bf = config.bc_mode == BoundaryCondition::kReflective ? 1.0 : 2.0;
  const double x = (static_cast<double>(i) + 0.5) * config.cell_width();
  return std::cos(bf * std::numbers::pi * x / config.core_height_L);
}

// Picard-style loop shared by the relaxed and AA-1 solvers. `update` maps
// (T, T*) to the next iterate.
template <typename Update>
CoupledSolution run_coupled(const ReactorConfig& config, const PinGeometry& pin,
                            const std::optional<ScalarField>& init, const PicardOptions& options,
                            Update&& update) {
  check_options(options);
  FixedPointMap map(config, pin, options.eigen);
  const double cap = options.divergence_cap * std::max(map.base().delta_t_fc, 1.0);

  CoupledSolution sol;
  ScalarField t = initial_field(config, pin, init);
  for (int it = 1; it <= options.max_iter; ++it) {
    const ScalarField t_star = map(t);
    ScalarField t_next = update(t, t_star);
    const double e = max_abs_difference(t_next, t);
    sol.trace.push(e, map.last_transport().k_eff);
    t = std::move(t_next);
    if (e < options.tol) {
      sol.trace.status = IterationStatus::kConverged;
      break;
    }
    const bool growing = sol.trace.records.size() >= 2 &&
                         e > sol.trace.records[sol.trace.records.size() - 2].error;
    if (!std::isfinite(e) || (e > cap && growing)) {
      sol.trace.status = IterationStatus::kDiverged;
      break;
    }
  }
  sol.phi = map.last_transport().phi;
  sol.k_eff = map.last_transport().k_eff;
  sol.t_m = map.last_coolant();
  sol.t_fuel = std::move(t);
  return sol;
}

}  // namespace

const char* to_string(IterationStatus status) noexcept {
  switch (status) {
    case IterationStatus::kConverged:
      return "converged";
    case IterationStatus::kDiverged:
      return "diverged";
    case IterationStatus::kMaxIterations:
      return "max-iterations";
  }
  return "unknown";
}

void IterationTrace::push(double error, double k_eff) {
  TraceRecord r;
  r.iteration = static_cast<int>(records.size()) + 1;
  r.error = error;
  r.k_eff = k_eff;
  if (!records.empty() && records.back().error > 0.0) r.ratio = error / records.back().error;
  records.push_back(r);
}

std::optional<double> IterationTrace::asymptotic_ratio(int window) const {
  if (window < 1) return std::nullopt;
  double log_sum = 0.0;
  int taken = 0;
  for (auto it = records.rbegin(); it != records.rend() && taken < window; ++it) {
    if (!it->ratio || !(*it->ratio > 0.0)) return std::nullopt;
    log_sum += std::log(*it->ratio);
    ++taken;
  }
  if (taken < window) return std::nullopt;
  return std::exp(log_sum / taken);
}

FixedPointMap::FixedPointMap(const ReactorConfig& config, const PinGeometry& pin, EigenOptions eigen)
    : config_(config),
      pin_(pin),
      base_(derive_base_state(config, pin)),
      quad_(gauss_legendre(config.n_angles)),
      eigen_(eigen) {
  t_m_ = nominal_coolant();
}

ScalarField FixedPointMap::nominal_coolant() const {
  const auto n = static_cast<std::size_t>(config_.n_cells);
  const double h = config_.cell_width();
  if (config_.coolant_mode == CoolantMode::kConstant) return ScalarField::uniform(n, h, config_.t_m);
  return coolant_axial(ScalarField::uniform(n, h, base_.q_prime_0), config_.t_m,
                       coolant_flow_capacity(config_, base_));
}

ScalarField FixedPointMap::operator()(const ScalarField& t_fuel) {
  const CrossSections xs = xs_at_temperature(base_, config_, t_fuel);
  std::optional<EigenGuess> guess;
  if (have_guess_) guess = EigenGuess{last_.k_eff, last_.phi};
  last_ = solve_k_eigenvalue(xs, quad_, config_.bc_mode, config_.cell_width(),
                             {base_.q_prime_0, base_.power_factor}, eigen_, guess);
  have_guess_ = true;
  if (config_.coolant_mode == CoolantMode::kAxial) {
    t_m_ = coolant_axial(linear_power(last_.phi, xs, pin_, config_.kappa), config_.t_m,
                         coolant_flow_capacity(config_, base_));
  }
  return fuel_temperature(last_.phi, xs, base_, t_m_);
}

ScalarField default_initial_temperature(const ReactorConfig& config, const PinGeometry& pin) {
  const FixedPointMap map(config, pin);
  ScalarField t = map.nominal_coolant();
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += map.base().delta_t_fc + slowest_mode(config, i);
  return t;
}

CoupledSolution picard_solve(const ReactorConfig& config, const PinGeometry& pin, double omega,
                             const std::optional<ScalarField>& init, const PicardOptions& options) {
  check_relaxation(omega);
  return run_coupled(config, pin, init, options,
                     [omega](const ScalarField& t, const ScalarField& t_star) {
                       if (omega == 1.0) return t_star;
                       ScalarField next = t_star;
                       for (std::size_t i = 0; i < next.size(); ++i) {
                         next[i] = omega * t_star[i] + (1.0 - omega) * t[i];
                       }
                       return next;
                     });
}

std::vector<double> Aa1Mixer::next(std::span<const double> x, std::span<const double> gx) {
  if (x.size() != gx.size()) throw std::invalid_argument("Aa1Mixer: size mismatch");
  const std::size_t n = x.size();
  std::vector<double> residual(n);
  for (std::size_t i = 0; i < n; ++i) residual[i] = gx[i] - x[i];

  std::vector<double> out(gx.begin(), gx.end());
  if (!prev_residual_.empty()) {
    if (prev_residual_.size() != n) throw std::invalid_argument("Aa1Mixer: size changed");
    double num = 0.0;
    double den = 0.0;
    double res2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = residual[i] - prev_residual_[i];
      num += residual[i] * d;
      den += d * d;
      res2 += residual[i] * residual[i];
    }
    if (den > 0.0) {
      theta_ = num / den;
      for (std::size_t i = 0; i < n; ++i) out[i] = (1.0 - theta_) * gx[i] + theta_ * prev_image_[i];
    } else if (res2 > 0.0) {
      ++degenerate_;
    }
  }
  prev_residual_ = std::move(residual);
  prev_image_.assign(gx.begin(), gx.end());
  return out;
}

CoupledSolution aa1_solve(const ReactorConfig& config, const PinGeometry& pin,
                          const std::optional<ScalarField>& init, const PicardOptions& options) {
  Aa1Mixer mixer;
  return run_coupled(config, pin, init, options,
                     [&mixer](const ScalarField& t, const ScalarField& t_star) {
                       return ScalarField(mixer.next(t.values(), t_star.values()), t.cell_width());
                     });
}

ScalarField perturbation_field(const ReactorConfig& config, const SpectralEstimateOptions& options) {
  const auto n = static_cast<std::size_t>(config.n_cells);
  const double amp = options.perturbation_amplitude;
  ScalarField p = ScalarField::uniform(n, config.cell_width(), 0.0);
  switch (options.shape) {
    case PerturbationShape::kSlowestMode:
      for (std::size_t i = 0; i < n; ++i) p[i] = amp * slowest_mode(config, i);
      break;
    case PerturbationShape::kSlowestPlusHighFrequency:
      for (std::size_t i = 0; i < n; ++i) {
        const double checker = (i % 2 == 0) ? 1.0 : -1.0;
        p[i] = 0.5 * amp * (slowest_mode(config, i) + checker);
      }
      break;
    case PerturbationShape::kRandom: {
      std::mt19937_64 rng(options.seed);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      for (std::size_t i = 0; i < n; ++i) p[i] = amp * dist(rng);
      break;
    }
  }
  return p;
}

SpectralEstimate estimate_spectral_radius_numerical(const ReactorConfig& config,
                                                    const PinGeometry& pin, double omega,
                                                    const SpectralEstimateOptions& options) {
  check_relaxation(omega);
  if (!(options.perturbation_amplitude >= 0.0)) {
    throw std::invalid_argument("perturbation amplitude must be >= 0");
  }
  if (options.window < 3) throw std::invalid_argument("measurement window must be >= 3");

  SpectralEstimate result;

  // Fixed point by heavily relaxed iteration from the flat nominal state.
  PicardOptions ref;
  ref.tol = options.reference_tol;
  ref.max_iter = options.reference_max_iter;
  ref.divergence_cap = std::numeric_limits<double>::max();
  ref.eigen = options.eigen;
  {
    const FixedPointMap nominal(config, pin);
    ScalarField start = nominal.nominal_coolant();
    for (std::size_t i = 0; i < start.size(); ++i) start[i] += nominal.base().delta_t_fc;
    CoupledSolution reference = picard_solve(config, pin, options.reference_omega, start, ref);
    if (reference.trace.status != IterationStatus::kConverged) {
      const double last = reference.trace.records.empty() ? 0.0 : reference.trace.records.back().error;
      throw ConvergenceError("relaxed fixed-point reference", reference.trace.iterations(), last);
    }
    result.fixed_point = std::move(reference.t_fuel);
  }

  const ScalarField delta = perturbation_field(config, options);
  const double amplitude = delta.max_abs();
  const std::size_t mid = delta.size() / 2 - 1;
  result.edge_error.push_back(delta[0]);
  result.mid_error.push_back(delta[mid]);
  if (amplitude == 0.0) return result;

  ScalarField t = result.fixed_point;
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += delta[i];

  FixedPointMap map(config, pin, options.eigen);
  const double upper = options.growth_limit;
  const double lower = options.decay_floor;
  for (int it = 1; it <= options.max_iter; ++it) {
    const ScalarField t_star = map(t);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = omega * t_star[i] + (1.0 - omega) * t[i];
    const double e = max_abs_difference(t, result.fixed_point);
    result.trace.push(e, map.last_transport().k_eff);
    result.edge_error.push_back(t[0] - result.fixed_point[0]);
    result.mid_error.push_back(t[mid] - result.fixed_point[mid]);
    if (e == 0.0) return result;
    if (e > upper) {
      result.trace.status = IterationStatus::kDiverged;
      break;
    }
    if (e < lower) {
      result.trace.status = IterationStatus::kConverged;
      break;
    }
  }

  // The first ratio (against the initial perturbation) is never used.
  std::vector<double> ratios;
  for (const TraceRecord& r : result.trace.records) {
    if (r.ratio) ratios.push_back(*r.ratio);
  }
  if (ratios.size() < 3) return result;

  // The leading half of the sequence is treated as transient.
  const std::size_t settled = std::max<std::size_t>(3, ratios.size() - ratios.size() / 2);
  const std::size_t window = std::min<std::size_t>(static_cast<std::size_t>(options.window), settled);
  const auto first = ratios.end() - static_cast<std::ptrdiff_t>(window);
  const auto [lo, hi] = std::minmax_element(first, ratios.end());
  double log_sum = 0.0;
  for (auto it = first; it != ratios.end(); ++it) log_sum += std::log(*it);
  const double mean = std::exp(log_sum / static_cast<double>(window));

  result.spread = *hi - *lo;
  result.samples = static_cast<int>(window);
  if (result.spread > options.max_spread) {
    throw NonAsymptoticError(result.spread, mean, result.samples);
  }
  result.rho = mean;
  return result;
}

}  // namespace picard
