#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "picard/config_io.hpp"
#include "picard/coupling.hpp"
#include "picard/fourier.hpp"

namespace picard::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kRuntimeError = 2 };

struct PredictReport {
  double omega = 1.0;
  double delta_t_fc = 0.0;
  SpectralRadius radius;
  double argmax_xi = 0.0;  // 0 for the asymptotic mode
  std::optional<double> omega_opt;
  RelaxationBranches branches;
};

PredictReport cmd_predict(const CaseConfig& config, double omega);
void print_predict(std::ostream& out, const PredictReport& report);

struct SimulateFlags {
  bool aa1 = false;
  bool measure_rho = false;
  std::optional<std::uint64_t> seed;  // random perturbation for --measure-rho
};

struct SimulateReport {
  CoupledSolution solution;
  double rho_fa = 0.0;
  std::optional<double> asymptotic_ratio;
  std::optional<SpectralEstimate> measured;
  std::string measure_error;  // set when the measurement failed
};

SimulateReport cmd_simulate(const CaseConfig& config, double omega, const SimulateFlags& flags);
void print_simulate(std::ostream& out, const SimulateReport& report, bool aa1, double omega);
void write_trace_csv(std::ostream& out, const IterationTrace& trace);

enum class SweepKind { kHeight, kOmega, kOmegaOpt };

struct SweepSpec {
  SweepKind kind = SweepKind::kHeight;
  double min = 0.0;
  double max = 0.0;
  double step = 0.0;
  double omega = 1.0;  // fixed relaxation for height sweeps
  bool numerical = false;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SweepRow {
  std::string case_id;
  std::string sweep_var;
  double sweep_value = 0.0;
  double rho_fa = 0.0;
  std::optional<double> rho_num;
  std::optional<double> omega_opt_fa;
  std::optional<int> iterations;
  std::string status;
};

inline constexpr const char* kSweepHeader =
    "case_id,sweep_var,sweep_value,rho_fa,rho_num,omega_opt_fa,iterations,status";

std::vector<double> sweep_grid(double min, double max, double step);

// Copy of `config` with core height L and the cell count rescaled so the
// mesh width is unchanged.
CaseConfig with_height(const CaseConfig& config, double height);

std::vector<SweepRow> cmd_sweep(const CaseConfig& config, const SweepSpec& spec);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace picard::cli
