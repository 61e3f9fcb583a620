#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <thread>

#include "picard/errors.hpp"

namespace picard::cli {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

FAParams fa_params(const CaseConfig& config) {
  return FAParams::from_config(config.reactor, derive_base_state(config.reactor, config.pin));
}

const char* kind_name(SweepKind kind) {
  switch (kind) {
    case SweepKind::kHeight:
      return "height";
    case SweepKind::kOmega:
      return "omega";
    case SweepKind::kOmegaOpt:
      return "omega-opt";
  }
  return "?";
}

SpectralEstimateOptions estimate_options(const std::optional<std::uint64_t>& seed) {
  SpectralEstimateOptions o;
  if (seed) {
    o.shape = PerturbationShape::kRandom;
    o.seed = *seed;
  }
  return o;
}

// Fills rho_num / iterations / status from a numerical measurement. Solver
// trouble becomes status text so one bad point never aborts a sweep.
void measure_into(SweepRow& row, const CaseConfig& config, double omega,
                  const std::optional<std::uint64_t>& seed) {
  try {
    const SpectralEstimate est =
        estimate_spectral_radius_numerical(config.reactor, config.pin, omega, estimate_options(seed));
    row.iterations = est.trace.iterations();
    row.rho_num = est.rho;
    row.status = est.rho ? to_string(est.trace.status) : "not-measurable";
  } catch (const NonAsymptoticError&) {
    row.status = "non-asymptotic";
  } catch (const TemperatureExcursionError&) {
    row.status = "temperature-excursion";
  } catch (const ConvergenceError&) {
    row.status = "transport-failure";
  }
}

SweepRow sweep_point(const CaseConfig& config, const SweepSpec& spec, std::size_t index,
                     double value) {
  SweepRow row;
  row.case_id = std::string(kind_name(spec.kind)) + "-" + std::to_string(index);
  row.sweep_value = value;
  row.status = "predicted";

  switch (spec.kind) {
    case SweepKind::kHeight: {
      row.sweep_var = "L";
      const CaseConfig point = with_height(config, value);
      row.rho_fa = spectral_radius_fa(fa_params(point), spec.omega).rho;
      if (spec.numerical) measure_into(row, point, spec.omega, spec.seed);
      break;
    }
    case SweepKind::kOmega: {
      row.sweep_var = "omega";
      row.rho_fa = spectral_radius_fa(fa_params(config), value).rho;
      if (spec.numerical) measure_into(row, config, value, spec.seed);
      break;
    }
    case SweepKind::kOmegaOpt: {
      row.sweep_var = "L";
      const CaseConfig point = with_height(config, value);
      const FAParams p = fa_params(point);
      try {
        const double w = omega_opt(p);
        row.omega_opt_fa = w;
        row.rho_fa = spectral_radius_fa(p, w).rho;
        if (spec.numerical && w <= 1.0) measure_into(row, point, w, spec.seed);
      } catch (const NoValidRelaxationError&) {
        row.rho_fa = spectral_radius_fa(p, spec.omega).rho;
        row.status = "no-valid-relaxation";
      }
      break;
    }
  }
  return row;
}

}  // namespace

PredictReport cmd_predict(const CaseConfig& config, double omega) {
  const FAParams p = fa_params(config);
  PredictReport r;
  r.omega = omega;
  r.delta_t_fc = p.delta_t_fc;
  r.radius = spectral_radius_fa(p, omega);
  r.argmax_xi = r.radius.asymptotic() ? 0.0 : mode_xi(p, r.radius.mode);
  try {
    r.omega_opt = omega_opt(p);
  } catch (const NoValidRelaxationError&) {
    r.omega_opt.reset();
  }
  r.branches = relaxation_branches(p, omega);
  return r;
}

void print_predict(std::ostream& out, const PredictReport& r) {
  out << "omega: " << num(r.omega) << '\n';
  out << "delta_t_fc: " << num(r.delta_t_fc) << '\n';
  out << "rho_fa: " << num(r.radius.rho) << '\n';
  out << "gain: " << num(r.radius.gain) << '\n';
  if (r.radius.asymptotic()) {
    out << "argmax_mode: inf\n";
  } else {
    out << "argmax_mode: " << r.radius.mode << " (xi = " << num(r.argmax_xi) << ")\n";
  }
  out << "omega_opt: " << (r.omega_opt ? num(*r.omega_opt) : std::string("none")) << '\n';
  out << "branch_xi_inf: " << num(r.branches.asymptotic) << '\n';
  out << "branch_xi_1: " << num(r.branches.slowest) << '\n';
}

SimulateReport cmd_simulate(const CaseConfig& config, double omega, const SimulateFlags& flags) {
  SimulateReport r;
  r.rho_fa = spectral_radius_fa(fa_params(config), omega).rho;
  r.solution = flags.aa1 ? aa1_solve(config.reactor, config.pin)
                         : picard_solve(config.reactor, config.pin, omega);
  r.asymptotic_ratio = r.solution.trace.asymptotic_ratio(10);
  if (flags.measure_rho) {
    try {
      r.measured = estimate_spectral_radius_numerical(config.reactor, config.pin, omega,
                                                      estimate_options(flags.seed));
    } catch (const NonAsymptoticError& e) {
      r.measure_error = e.what();
    }
  }
  return r;
}

void print_simulate(std::ostream& out, const SimulateReport& r, bool aa1, double omega) {
  const CoupledSolution& s = r.solution;
  out << "method: " << (aa1 ? "aa1" : "picard") << '\n';
  if (!aa1) out << "omega: " << num(omega) << '\n';
  out << "status: " << to_string(s.trace.status) << '\n';
  out << "iterations: " << s.trace.iterations() << '\n';
  out << "k_eff: " << num(s.k_eff) << '\n';
  if (!s.trace.records.empty()) out << "last_update_K: " << num(s.trace.records.back().error) << '\n';
  out << "asymptotic_ratio: " << opt_num(r.asymptotic_ratio) << '\n';
  out << "rho_fa: " << num(r.rho_fa) << '\n';
  if (r.measured) {
    out << "rho_numerical: " << (r.measured->rho ? num(*r.measured->rho) : "not-measurable") << '\n';
    out << "rho_numerical_spread: " << num(r.measured->spread) << '\n';
  } else if (!r.measure_error.empty()) {
    out << "rho_numerical: non-asymptotic (" << r.measure_error << ")\n";
  }
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
  out << "iteration,error_K,k_eff,ratio\n";
  for (const TraceRecord& rec : trace.records) {
    out << rec.iteration << ',' << num(rec.error) << ',' << num(rec.k_eff) << ','
        << opt_num(rec.ratio) << '\n';
  }
}

std::vector<double> sweep_grid(double min, double max, double step) {
  if (!(step > 0.0) || !(min < max) || !std::isfinite(min) || !std::isfinite(max)) {
    throw std::invalid_argument("sweep range needs min < max and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = min + static_cast<double>(i) * step;
  return values;
}

CaseConfig with_height(const CaseConfig& config, double height) {
  CaseConfig out = config;
  const double h = config.reactor.cell_width();
  out.reactor.core_height_L = height;
  out.reactor.n_cells = std::max(2, static_cast<int>(std::lround(height / h)));
  out.reactor.validate();
  return out;
}

std::vector<SweepRow> cmd_sweep(const CaseConfig& config, const SweepSpec& spec) {
  const std::vector<double> values = sweep_grid(spec.min, spec.max, spec.step);
  std::vector<SweepRow> rows(values.size());
  std::vector<std::exception_ptr> errors(values.size());

  unsigned workers = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(values.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        rows[i] = sweep_point(config, spec, i, values[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    out << r.case_id << ',' << r.sweep_var << ',' << num(r.sweep_value) << ',' << num(r.rho_fa)
        << ',' << opt_num(r.rho_num) << ',' << opt_num(r.omega_opt_fa) << ','
        << (r.iterations ? std::to_string(*r.iterations) : std::string()) << ',' << r.status
        << '\n';
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Picard coupling stability: Fourier prediction and 1-D transport/thermal simulation"};
  app.require_subcommand(1);

  std::string config_path;
  double omega = 1.0;
  std::optional<std::uint64_t> seed;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value case file (defaults: reference case)");
    sub->add_option("--omega", omega, "relaxation factor")->check(CLI::Range(0.0, 1.0));
  };

  CLI::App* predict = app.add_subcommand("predict", "closed-form spectral radius and optimal relaxation");
  common(predict);

  CLI::App* simulate = app.add_subcommand("simulate", "run the coupled Picard (or AA-1) iteration");
  common(simulate);
  bool aa1 = false;
  bool measure = false;
  std::string trace_path;
  simulate->add_flag("--aa1", aa1, "use depth-one Anderson mixing instead of relaxation");
  simulate->add_flag("--measure-rho", measure, "also measure the spectral radius numerically");
  simulate->add_option("--trace", trace_path, "write the iteration trace as CSV");
  simulate->add_option("--seed", seed, "random perturbation seed for --measure-rho");

  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep written as CSV");
  common(sweep);
  std::string kind_text;
  SweepSpec spec;
  std::string out_path;
  sweep->add_option("--sweep", kind_text, "height | omega | omega-opt")
      ->required()
      ->check(CLI::IsMember({"height", "omega", "omega-opt"}));
  sweep->add_option("--min", spec.min, "first sweep value")->required();
  sweep->add_option("--max", spec.max, "last sweep value")->required();
  sweep->add_option("--step", spec.step, "sweep increment")->required();
  sweep->add_flag("--numerical", spec.numerical, "add numerically measured spectral radii");
  sweep->add_option("--out", out_path, "CSV output path (default stdout)");
  sweep->add_option("--seed", seed, "random perturbation seed for --numerical");
  sweep->add_option("--threads", spec.threads, "worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kConfigError;
  }

  CaseConfig config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
    config.reactor.validate();
    config.pin.validate();
    if (const double ratio = dd_optical_ratio(config.reactor); ratio >= 1.0) {
      err << "warning: sigma_t*h/(2*mu_min) = " << num(ratio)
          << " >= 1; diamond difference may produce negative fluxes for steep sources\n";
    }
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (predict->parsed()) {
      print_predict(out, cmd_predict(config, omega));
    } else if (simulate->parsed()) {
      SimulateFlags flags{aa1, measure, seed};
      const SimulateReport report = cmd_simulate(config, omega, flags);
      print_simulate(out, report, aa1, omega);
      if (!trace_path.empty()) {
        std::ofstream trace(trace_path);
        if (!trace) {
          err << "cannot write trace file " << trace_path << '\n';
          return kRuntimeError;
        }
        write_trace_csv(trace, report.solution.trace);
      }
    } else {
      spec.kind = kind_text == "height"  ? SweepKind::kHeight
                  : kind_text == "omega" ? SweepKind::kOmega
                                         : SweepKind::kOmegaOpt;
      spec.omega = omega;
      spec.seed = seed;
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
          err << "cannot write output file " << out_path << '\n';
          return kRuntimeError;
        }
      }
      const std::vector<SweepRow> rows = cmd_sweep(config, spec);
      write_sweep_csv(out_path.empty() ? out : file, rows);
      if (file.is_open()) {
        file.flush();
        if (!file) {
          err << "failed writing " << out_path << '\n';
          return kRuntimeError;
        }
      }
    }
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}

}  // namespace picard::cli
