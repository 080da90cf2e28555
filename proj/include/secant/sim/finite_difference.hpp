#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace secant::sim {

/// Fourth-order finite-difference derivative of a uniformly sampled series:
/// five-point centered stencil inside, five-point one-sided stencils on the
/// two samples at each end. Shorter series fall back to lower order.
[[nodiscard]] inline std::vector<double> derivative(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> df(n, 0.0);
  if (n < 2) return df;
  if (n < 5) {
    df[0] = (f[1] - f[0]) / h;
    df[n - 1] = (f[n - 1] - f[n - 2]) / h;
    for (std::size_t i = 1; i + 1 < n; ++i) df[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    return df;
  }
  const double c = 1.0 / (12.0 * h);
  df[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  df[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    df[i] = c * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
  }
  df[n - 2] = c * (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]);
  df[n - 1] = c * (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]);
  return df;
}

/// Run-specific bound on the truncation error of `derivative`. The worst
/// stencil error is h^4 |f^(5)| / 5; |f^(5)| is estimated from fifth
/// differences and doubled.
[[nodiscard]] inline double derivative_error_bound(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 3) return 0.0;
  if (n < 6) {
    double m = 0.0;
    for (std::size_t i = 0; i + 2 < n; ++i) m = std::max(m, std::abs(f[i + 2] - 2.0 * f[i + 1] + f[i]));
    return m / h;
  }
  double m = 0.0;
  for (std::size_t i = 0; i + 5 < n; ++i) {
    const double d5 = f[i + 5] - 5.0 * f[i + 4] + 10.0 * f[i + 3] - 10.0 * f[i + 2] + 5.0 * f[i + 1] - f[i];
    m = std::max(m, std::abs(d5));
  }
  return 2.0 * m / (5.0 * h);
}

}  // namespace secant::sim
