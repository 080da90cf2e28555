#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "secant/errors.hpp"

namespace secant {

/// cos(pi/n), exact for the angles where the secant bound is usually quoted.
/// n = 1 and n = 2 return -1 and 0 exactly so that the margin 1 - r cos(pi/n)
/// never picks up a spurious 6e-17 at n = 2.
[[nodiscard]] inline double cos_pi_over(std::size_t n) {
  switch (n) {
    case 1: return -1.0;
    case 2: return 0.0;
    case 3: return 0.5;
    case 4: return std::sqrt(0.5);
    case 6: return 0.5 * std::sqrt(3.0);
    default: return std::cos(std::numbers::pi / static_cast<double>(n));
  }
}

/// Positive loop gains gamma_1..gamma_n of a cyclic interconnection.
class GainVector {
 public:
  GainVector() = delete;
  GainVector(std::vector<double> gains) : gains_(std::move(gains)) { validate(); }  // NOLINT
  GainVector(std::initializer_list<double> gains) : gains_(gains) { validate(); }

  [[nodiscard]] std::size_t size() const noexcept { return gains_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return gains_[i]; }
  [[nodiscard]] std::span<const double> values() const noexcept { return gains_; }
  [[nodiscard]] const std::vector<double>& vector() const noexcept { return gains_; }

  [[nodiscard]] double product() const noexcept {
    double p = 1.0;
    for (double g : gains_) p *= g;
    return p;
  }

  /// Geometric mean (gamma_1 ... gamma_n)^(1/n).
  [[nodiscard]] double geometric_mean() const {
    const double p = product();
    switch (gains_.size()) {
      case 1: return p;
      case 2: return std::sqrt(p);
      case 3: return std::cbrt(p);
      case 4: return std::sqrt(std::sqrt(p));
      default: break;
    }
    if (std::isfinite(p) && p > 0.0) return std::pow(p, 1.0 / static_cast<double>(gains_.size()));
    double log_sum = 0.0;
    for (double g : gains_) log_sum += std::log(g);
    return std::exp(log_sum / static_cast<double>(gains_.size()));
  }

  friend bool operator==(const GainVector&, const GainVector&) = default;

 private:
  void validate() const {
    if (gains_.empty()) throw InvalidArgument("at least one gain required");
    for (double g : gains_) {
      if (!std::isfinite(g) || g <= 0.0) throw InvalidArgument("gains must be positive");
    }
  }

  std::vector<double> gains_;
};

/// Dense realization of the cyclic matrix: -1 on the diagonal, gamma_{i+1}
/// on the subdiagonal, -gamma_1 in the top-right corner. For n = 1 the block
/// closes on itself and the single entry is -1 - gamma_1.
class CyclicMatrix {
 public:
  explicit CyclicMatrix(const GainVector& gains) : gains_(gains), entries_(build(gains)) {}

  [[nodiscard]] std::size_t n() const noexcept { return gains_.size(); }
  [[nodiscard]] const GainVector& gains() const noexcept { return gains_; }
  [[nodiscard]] const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  static Eigen::MatrixXd build(const GainVector& g) {
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd a = -Eigen::MatrixXd::Identity(n, n);
    if (n == 1) {
      a(0, 0) = -1.0 - g[0];
      return a;
    }
    a(0, n - 1) = -g[0];
    for (Eigen::Index i = 1; i < n; ++i) a(i, i - 1) = g[static_cast<std::size_t>(i)];
    return a;
  }

  GainVector gains_;
  Eigen::MatrixXd entries_;
};

[[nodiscard]] inline CyclicMatrix build_cyclic_matrix(const GainVector& gains) {
  return CyclicMatrix(gains);
}

struct SecantReport {
  std::size_t n = 0;
  double product = 0.0;
  double r = 0.0;       ///< geometric mean of the gains
  double margin = 0.0;  ///< 1 - r cos(pi/n)
  bool satisfied = false;

  /// sec(pi/n)^n; +infinity for n <= 2 where the condition always holds.
  [[nodiscard]] double bound() const {
    if (n <= 2) return std::numeric_limits<double>::infinity();
    return std::pow(1.0 / cos_pi_over(n), static_cast<double>(n));
  }
};

/// Evaluates gamma_1 ... gamma_n < sec(pi/n)^n in margin form. The comparison
/// is strict with no slack: the boundary product reports `satisfied = false`.
[[nodiscard]] inline SecantReport secant_report(const GainVector& gains) {
  SecantReport rep;
  rep.n = gains.size();
  rep.product = gains.product();
  rep.r = gains.geometric_mean();
  rep.margin = 1.0 - rep.r * cos_pi_over(rep.n);
  rep.satisfied = rep.margin > 0.0;
  return rep;
}

/// Largest real part among the eigenvalues of the cyclic matrix, from the
/// closed form (lambda + 1)^n = -gamma_1 ... gamma_n: -1 + r cos(pi/n).
[[nodiscard]] inline double hurwitz_margin(const GainVector& gains) {
  return -1.0 + gains.geometric_mean() * cos_pi_over(gains.size());
}

}  // namespace secant
