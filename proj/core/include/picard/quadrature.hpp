#pragma once

#include <cstddef>
#include <vector>

namespace picard {

inline constexpr int kMaxQuadratureOrder = 64;

// Discrete-ordinates angular set on (-1, 1). Ordered ascending, so
// mu[n] == -mu[size() - 1 - n].
struct Quadrature {
  std::vector<double> mu;
  std::vector<double> w;

  std::size_t size() const noexcept { return mu.size(); }
};

// Gauss-Legendre nodes and weights on [-1, 1]. n must be even, 2 <= n <= 64;
// otherwise std::invalid_argument.
Quadrature gauss_legendre(int n);

}  // namespace picard
