#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace picard {

// Cell-averaged axial profile on a uniform grid.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(std::vector<double> values, double cell_width);

  static ScalarField uniform(std::size_t n_cells, double cell_width, double value);

  std::size_t size() const noexcept { return values_.size(); }
  double cell_width() const noexcept { return width_; }
  double length() const noexcept { return width_ * static_cast<double>(values_.size()); }
  // Cell-centre coordinate of cell i.
  double center(std::size_t i) const noexcept { return (static_cast<double>(i) + 0.5) * width_; }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  double max_abs() const noexcept;
  double mean() const noexcept;

  bool same_grid(const ScalarField& other) const noexcept;

  friend bool operator==(const ScalarField&, const ScalarField&) = default;

 private:
  std::vector<double> values_;
  double width_ = 1.0;
};

// max_i |a_i - b_i|; the fields must share a grid.
double max_abs_difference(const ScalarField& a, const ScalarField& b);

}  // namespace picard
