#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace picard {

// Base for every failure the library reports. Precondition violations on
// plain arguments use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configuration value (or a quantity derived from it) is out of range.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// The linear cross-section model produced a nonpositive value.
class TemperatureExcursionError : public Error {
 public:
  TemperatureExcursionError(std::size_t cell, double temperature, const std::string& which);
  std::size_t cell() const noexcept { return cell_; }
  double temperature() const noexcept { return temperature_; }

 private:
  std::size_t cell_;
  double temperature_;
};

// An iterative solve hit its iteration limit.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& solver, int iterations, double residual);
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

// Closed-form optimal relaxation has a nonpositive denominator.
class NoValidRelaxationError : public Error {
 public:
  using Error::Error;
};

// Error ratios did not settle over the measurement window.
class NonAsymptoticError : public Error {
 public:
  NonAsymptoticError(double spread, double mean_ratio, int samples);
  double spread() const noexcept { return spread_; }
  double mean_ratio() const noexcept { return mean_ratio_; }
  int samples() const noexcept { return samples_; }

 private:
  double spread_;
  double mean_ratio_;
  int samples_;
};

}  // namespace picard
