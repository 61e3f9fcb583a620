#include "picard/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace picard {

Quadrature gauss_legendre(int n) {
  if (n < 2 || n > kMaxQuadratureOrder || n % 2 != 0) {
    throw std::invalid_argument("gauss_legendre: order must be even and in [2, 64], got " +
                                std::to_string(n));
  }
  Quadrature q;
  q.mu.resize(n);
  q.w.resize(n);
  const double dn = static_cast<double>(n);
  const int half = n / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (dn + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p0 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p0;
        p0 = p1;
        p1 = ((2.0 * j - 1.0) * z * p0 - (j - 1.0) * p2) / j;
      }
      dp = dn * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p1 = 1.0;
    double p0 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p0;
      p0 = p1;
      p1 = ((2.0 * j - 1.0) * z * p0 - (j - 1.0) * p2) / j;
    }
    dp = dn * (z * p1 - p0) / (z * z - 1.0);
    const double weight = 2.0 / ((1.0 - z * z) * dp * dp);

    q.mu[i] = -z;
    q.mu[n - 1 - i] = z;
    q.w[i] = weight;
    q.w[n - 1 - i] = weight;
  }
  return q;
}

}  // namespace picard
