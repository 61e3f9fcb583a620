#include "picard/transport.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "picard/errors.hpp"

namespace picard {
namespace {

// Per-ordinate DD coefficients: psi_out = alpha_i psi_in + beta_i.
struct SweepCoefficients {
  std::vector<double> alpha;
  std::vector<double> beta;
  double transmission = 1.0;  // product of alpha over the slab
};

void build_coefficients(const CrossSections& xs, const ScalarField& source, double mu,
                        SweepCoefficients& c) {
  const std::size_t n = source.size();
  const double h = source.cell_width();
  c.alpha.resize(n);
  c.beta.resize(n);
  c.transmission = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = xs.sigma_t[i] * h / (2.0 * mu);
    c.alpha[i] = (1.0 - tau) / (1.0 + tau);
    c.beta[i] = source[i] * h / (2.0 * mu) / (1.0 + tau);
    c.transmission *= c.alpha[i];
  }
}

double exit_flux_forward(const SweepCoefficients& c, double psi) {
  for (std::size_t i = 0; i < c.alpha.size(); ++i) psi = c.alpha[i] * psi + c.beta[i];
  return psi;
}

double exit_flux_backward(const SweepCoefficients& c, double psi) {
  for (std::size_t i = c.alpha.size(); i-- > 0;) psi = c.alpha[i] * psi + c.beta[i];
  return psi;
}

double accumulate_forward(const SweepCoefficients& c, double psi, double weight,
                          std::span<double> phi) {
  for (std::size_t i = 0; i < c.alpha.size(); ++i) {
    const double out = c.alpha[i] * psi + c.beta[i];
    phi[i] += weight * 0.5 * (psi + out);
    psi = out;
  }
  return psi;
}

double accumulate_backward(const SweepCoefficients& c, double psi, double weight,
                           std::span<double> phi) {
  for (std::size_t i = c.alpha.size(); i-- > 0;) {
    const double out = c.alpha[i] * psi + c.beta[i];
    phi[i] += weight * 0.5 * (psi + out);
    psi = out;
  }
  return psi;
}

void check_grid(const CrossSections& xs, std::size_t n, const char* who) {
  if (xs.sigma_t.size() != n || xs.sigma_s.size() != n || xs.sigma_f.size() != n ||
      xs.nu_sigma_f.size() != n) {
    throw std::invalid_argument(std::string(who) + ": cross sections do not match the grid");
  }
}

double relative_change(std::span<const double> next, std::span<const double> prev) {
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < next.size(); ++i) {
    diff = std::max(diff, std::abs(next[i] - prev[i]));
    scale = std::max(scale, std::abs(next[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

double mean_product(const std::vector<double>& a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s / static_cast<double>(a.size());
}

void scale(std::span<double> v, double factor) {
  for (double& x : v) x *= factor;
}

}  // namespace

CellStep dd_cell_step(double sigma_t, double h, double mu_abs, double psi_in, double emission) {
  const double tau = sigma_t * h / (2.0 * mu_abs);
  const double out = (emission * h / (2.0 * mu_abs) + psi_in * (1.0 - tau)) / (1.0 + tau);
  return {out, 0.5 * (psi_in + out)};
}

ScalarField dd_sweep(const CrossSections& xs, const ScalarField& source, const Quadrature& quad,
                     BoundaryCondition bc) {
  const std::size_t n = source.size();
  check_grid(xs, n, "dd_sweep");
  ScalarField phi = ScalarField::uniform(n, source.cell_width(), 0.0);
  std::span<double> acc = phi.values();

  const std::size_t half = quad.size() / 2;
  SweepCoefficients c;
  // Ordinates are paired as (-mu, +mu); quadrature indices half-1-p and half+p.
  for (std::size_t p = 0; p < half; ++p) {
    const std::size_t pos = half + p;
    const std::size_t neg = half - 1 - p;
    const double mu = quad.mu[pos];
    build_coefficients(xs, source, mu, c);

    const double b_fwd = exit_flux_forward(c, 0.0);
    const double b_bwd = exit_flux_backward(c, 0.0);
    const double a = c.transmission;

    double left_in = 0.0;   // incoming at x = 0 along +mu
    double right_in = 0.0;  // incoming at x = L along -mu
    if (bc == BoundaryCondition::kReflective) {
      left_in = (a * b_fwd + b_bwd) / (1.0 - a * a);
      right_in = a * left_in + b_fwd;
    } else {
      left_in = b_fwd / (1.0 - a);
      right_in = b_bwd / (1.0 - a);
    }
    accumulate_backward(c, right_in, quad.w[neg], acc);
    accumulate_forward(c, left_in, quad.w[pos], acc);
  }
  return phi;
}

FixedSourceSolution solve_fixed_source(const CrossSections& xs, const ScalarField& fixed_source,
                                       const Quadrature& quad, BoundaryCondition bc,
                                       const FixedSourceOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("solve_fixed_source: tol must be > 0");
  const std::size_t n = fixed_source.size();
  check_grid(xs, n, "solve_fixed_source");

  const bool scattering = std::any_of(xs.sigma_s.begin(), xs.sigma_s.end(),
                                      [](double s) { return s != 0.0; });
  FixedSourceSolution result;
  result.phi = ScalarField::uniform(n, fixed_source.cell_width(), 0.0);
  ScalarField emission = fixed_source;
  for (int it = 1; it <= options.max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) emission[i] = xs.sigma_s[i] * result.phi[i] + fixed_source[i];
    ScalarField next = dd_sweep(xs, emission, quad, bc);
    const double change = relative_change(next.values(), result.phi.values());
    result.phi = std::move(next);
    result.iterations = it;
    result.changes.push_back(change);
    if (!scattering || change < options.tol) return result;
  }
  throw ConvergenceError("source iteration", options.max_iter, result.changes.back());
}

NeutronBalance neutron_balance(const CrossSections& xs, const ScalarField& phi) {
  NeutronBalance b;
  const double h = phi.cell_width();
  for (std::size_t i = 0; i < phi.size(); ++i) {
    b.production += xs.nu_sigma_f[i] * phi[i] * h;
    b.absorption += (xs.sigma_t[i] - xs.sigma_s[i]) * phi[i] * h;
  }
  return b;
}

namespace {

struct EigenState {
  double k;
  ScalarField phi;  // normalized to unit mean fission source
  EigenSolution out;
};

void record(EigenState& s, double k_next, ScalarField phi_next) {
  const double change = relative_change(phi_next.values(), s.phi.values());
  s.out.changes.push_back(change);
  s.out.k_eff = k_next;
  s.phi = std::move(phi_next);
  ++s.out.iterations;
  s.k = k_next;
}

bool settled(const EigenState& s, double dk, double tol) {
  return !s.out.changes.empty() && s.out.changes.back() < tol && dk < tol;
}

void power_iteration(const CrossSections& xs, const Quadrature& quad, BoundaryCondition bc,
                     const EigenOptions& options, EigenState& s) {
  const std::size_t n = s.phi.size();
  ScalarField emission = s.phi;
  while (s.out.iterations < options.max_iter) {
    for (std::size_t i = 0; i < n; ++i) {
      emission[i] = xs.sigma_s[i] * s.phi[i] + xs.nu_sigma_f[i] * s.phi[i] / s.k;
    }
    ScalarField next = dd_sweep(xs, emission, quad, bc);
    const double fission = mean_product(xs.nu_sigma_f, next.values());
    const double k_next = s.k * fission;  // previous fission source has unit mean
    scale(next.values(), 1.0 / fission);
    const double dk = std::abs(k_next - s.k);
    record(s, k_next, std::move(next));
    if (settled(s, dk, options.tol)) {
      s.out.converged = true;
      return;
    }
  }
}

void wielandt_iteration(const CrossSections& xs, const Quadrature& quad, BoundaryCondition bc,
                        const EigenOptions& options, bool warm, EigenState& s) {
  const auto n = static_cast<Eigen::Index>(s.phi.size());
  const double h = s.phi.cell_width();

  // Dense response matrix of the exact-boundary sweep: column j is the flux
  // from a unit emission density in cell j.
  Eigen::MatrixXd response(n, n);
  ScalarField unit = ScalarField::uniform(s.phi.size(), h, 0.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    unit[j] = 1.0;
    const ScalarField col = dd_sweep(xs, unit, quad, bc);
    unit[j] = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) response(i, j) = col[i];
  }
  const Eigen::Map<const Eigen::VectorXd> sigma_s(xs.sigma_s.data(), n);
  const Eigen::Map<const Eigen::VectorXd> nu_sigma_f(xs.nu_sigma_f.data(), n);
  const Eigen::MatrixXd loss =
      Eigen::MatrixXd::Identity(n, n) - response * sigma_s.asDiagonal();
  const Eigen::MatrixXd production = response * nu_sigma_f.asDiagonal();

  double lambda_shift = 0.0;
  auto factor = [&](double shift) {
    return Eigen::PartialPivLU<Eigen::MatrixXd>(loss - shift * production);
  };
  auto shifted_for = [&](double k) { return 1.0 / (k * (1.0 + options.shift_offset)); };

  if (warm) lambda_shift = shifted_for(s.k);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu = factor(lambda_shift);

  Eigen::VectorXd phi = Eigen::Map<const Eigen::VectorXd>(s.phi.values().data(), n);
  while (s.out.iterations < options.max_iter) {
    Eigen::VectorXd next = lu.solve(production * phi);
    const double ratio = nu_sigma_f.dot(next) / nu_sigma_f.dot(phi);
    if (!(ratio > 0.0)) {
      // Shift landed beyond the fundamental eigenvalue; restart unshifted.
      lambda_shift = 0.0;
      lu = factor(lambda_shift);
      continue;
    }
    const double k_next = 1.0 / (lambda_shift + 1.0 / ratio);
    next *= static_cast<double>(n) / nu_sigma_f.dot(next);

    ScalarField next_field(std::vector<double>(next.data(), next.data() + n), h);
    const double dk = std::abs(k_next - s.k);
    record(s, k_next, std::move(next_field));
    phi = std::move(next);
    if (lambda_shift != 0.0 && settled(s, dk, options.tol)) {
      s.out.converged = true;
      return;
    }
    if (lambda_shift == 0.0) {
      if (settled(s, dk, options.tol)) {
        s.out.converged = true;
        return;
      }
      if (dk < 0.05 * options.shift_offset * k_next) {
        lambda_shift = shifted_for(k_next);
        lu = factor(lambda_shift);
      }
    }
  }
}

}  // namespace

EigenSolution solve_k_eigenvalue(const CrossSections& xs, const Quadrature& quad,
                                 BoundaryCondition bc, double cell_width,
                                 const PowerNormalization& norm, const EigenOptions& options,
                                 const std::optional<EigenGuess>& guess) {
  if (!(norm.q_prime > 0.0) || !(norm.power_factor > 0.0)) {
    throw std::invalid_argument("solve_k_eigenvalue: target power must be > 0");
  }
  if (!(options.tol > 0.0)) throw std::invalid_argument("solve_k_eigenvalue: tol must be > 0");
  const std::size_t n = xs.size();
  check_grid(xs, n, "solve_k_eigenvalue");

  EigenState s;
  s.k = 1.0;
  s.phi = ScalarField::uniform(n, cell_width, 1.0);
  if (guess) {
    if (guess->phi.size() != n) throw std::invalid_argument("solve_k_eigenvalue: guess grid mismatch");
    if (!(guess->k_eff > 0.0)) throw std::invalid_argument("solve_k_eigenvalue: guess k must be > 0");
    s.k = guess->k_eff;
    s.phi = ScalarField(std::vector<double>(guess->phi.values().begin(), guess->phi.values().end()),
                        cell_width);
  }
  const double fission = mean_product(xs.nu_sigma_f, s.phi.values());
  if (!(fission > 0.0)) throw std::invalid_argument("solve_k_eigenvalue: initial flux has no fission");
  scale(s.phi.values(), 1.0 / fission);
  s.out.k_eff = s.k;

  if (options.method == EigenMethod::kPower) {
    power_iteration(xs, quad, bc, options, s);
  } else {
    wielandt_iteration(xs, quad, bc, options, guess.has_value(), s);
  }
  if (!s.out.converged) {
    throw ConvergenceError("k-eigenvalue iteration", s.out.iterations,
                           s.out.changes.empty() ? 0.0 : s.out.changes.back());
  }

  const double power = norm.power_factor * mean_product(xs.sigma_f, s.phi.values());
  scale(s.phi.values(), norm.q_prime / power);
  s.out.phi = std::move(s.phi);
  s.out.k_eff = s.k;
  return std::move(s.out);
}

}  // namespace picard
