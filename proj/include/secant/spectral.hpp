#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "secant/core_matrix.hpp"
#include "secant/errors.hpp"

namespace secant {

/// The normalized cyclic matrix: 1 on the diagonal, r on the subdiagonal and
/// (-1)^{n+1} r in the top-right corner. Circulant for odd n, skew-circulant
/// for even n. For n = 1 the corner coincides with the diagonal: [1 + r].
[[nodiscard]] inline Eigen::MatrixXd normalized_cyclic_matrix(double r, std::size_t n) {
  if (!(r > 0.0)) throw InvalidArgument("r must be positive");
  if (n < 1) throw InvalidArgument("n must be at least 1");
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dim, dim);
  for (Eigen::Index i = 1; i < dim; ++i) m(i, i - 1) = r;
  m(0, dim - 1) += (n % 2 == 1) ? r : -r;
  return m;
}

struct CirculantSpectrum {
  std::size_t n = 0;
  double r = 0.0;
  std::vector<std::complex<double>> eigenvalues;  ///< lambda_k, k = 1..n
  Eigen::MatrixXcd eigenvectors;                  ///< column k-1 holds v_k, unit norm
  double min_real_part = 0.0;                     ///< 1 - r cos(pi/n)
};

/// Angle theta_k of the k-th eigenvalue 1 + r e^{i theta_k}, k = 1..n.
[[nodiscard]] inline double spectrum_angle(std::size_t k, std::size_t n) {
  const double base = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return (n % 2 == 1) ? base : base + std::numbers::pi / static_cast<double>(n);
}

/// Closed-form eigenpairs of normalized_cyclic_matrix(r, n). The matrix is
/// normal, so V = [v_1 ... v_n] is unitary with v_k[j] = e^{-i j theta_k}/sqrt(n).
[[nodiscard]] inline CirculantSpectrum circulant_spectrum(double r, std::size_t n) {
  if (!(r > 0.0)) throw InvalidArgument("r must be positive");
  if (n < 1) throw InvalidArgument("n must be at least 1");

  CirculantSpectrum s;
  s.n = n;
  s.r = r;
  s.eigenvalues.reserve(n);
  const auto dim = static_cast<Eigen::Index>(n);
  s.eigenvectors.resize(dim, dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));

  for (std::size_t k = 1; k <= n; ++k) {
    const double theta = spectrum_angle(k, n);
    s.eigenvalues.push_back(1.0 + std::polar(r, theta));
    for (Eigen::Index j = 0; j < dim; ++j) {
      s.eigenvectors(j, static_cast<Eigen::Index>(k - 1)) =
          std::polar(scale, -static_cast<double>(j) * theta);
    }
  }
  s.min_real_part = 1.0 - r * cos_pi_over(n);
  return s;
}

/// Smallest eigenvalue of the symmetric part of normalized_cyclic_matrix(r, n).
[[nodiscard]] inline double symmetric_part_min_eig(double r, std::size_t n) {
  if (!(r > 0.0)) throw InvalidArgument("r must be positive");
  if (n < 1) throw InvalidArgument("n must be at least 1");
  return 1.0 - r * cos_pi_over(n);
}

}  // namespace secant
