#include "picard/errors.hpp"

#include <cstdio>

namespace picard {
namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message)
    : Error("invalid configuration: " + field + ": " + message), field_(std::move(field)) {}

TemperatureExcursionError::TemperatureExcursionError(std::size_t cell, double temperature,
                                                     const std::string& which)
    : Error("temperature excursion: " + which + " cross section is nonpositive in cell " +
            std::to_string(cell) + " at T = " + format_double(temperature) + " K"),
      cell_(cell),
      temperature_(temperature) {}

ConvergenceError::ConvergenceError(const std::string& solver, int iterations, double residual)
    : Error(solver + " did not converge in " + std::to_string(iterations) +
            " iterations (last residual " + format_double(residual) + ")"),
      iterations_(iterations),
      residual_(residual) {}

NonAsymptoticError::NonAsymptoticError(double spread, double mean_ratio, int samples)
    : Error("error ratios did not settle: spread " + format_double(spread) + " around " +
            format_double(mean_ratio) + " over " + std::to_string(samples) + " samples"),
      spread_(spread),
      mean_ratio_(mean_ratio),
      samples_(samples) {}

}  // namespace picard
