#pragma once

// Test-only oracles. Everything here is computed without going through the
// closed forms under test: dense eigensolvers, matrix exponentials, and
// literal matrix construction.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

/// The cyclic matrix written out entry by entry.
inline Eigen::MatrixXd cyclic(const std::vector<double>& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) = -1.0;
  if (n == 1) {
    a(0, 0) -= g[0];
    return a;
  }
  a(0, n - 1) = -g[0];
  for (Eigen::Index i = 1; i < n; ++i) a(i, i - 1) = g[static_cast<std::size_t>(i)];
  return a;
}

inline double max_real_eig(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  return es.eigenvalues().real().maxCoeff();
}

inline double min_sym_eig(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Exact flow of dx/dt = A x.
inline Eigen::VectorXd flow(const Eigen::MatrixXd& a, const Eigen::VectorXd& x0, double t) {
  const Eigen::MatrixXd e = (a * t).exp();
  return e * x0;
}

/// Gains with geometric mean `r` and log-spread `spread` around it.
inline std::vector<double> gains_with_mean(std::mt19937_64& rng, std::size_t n, double r, double spread = 0.5) {
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<double> xi(n);
  double mean = 0.0;
  for (auto& v : xi) {
    v = u(rng);
    mean += v;
  }
  mean /= static_cast<double>(n);
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = r * std::exp(xi[i] - mean);
  return g;
}

/// Random gain vector whose geometric mean straddles the secant boundary
/// sec(pi/n) (uniform in [0.5, 1.5] times the boundary value).
inline std::vector<double> gains_near_boundary(std::mt19937_64& rng, std::size_t n) {
  const double boundary = n <= 2 ? 2.0 : 1.0 / std::cos(3.14159265358979323846 / static_cast<double>(n));
  std::uniform_real_distribution<double> f(0.5, 1.5);
  return gains_with_mean(rng, n, boundary * f(rng));
}

}  // namespace oracle
