#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "secant/core_matrix.hpp"
#include "secant/errors.hpp"

namespace secant {

/// Default tolerance on the negativity margin of a diagonal certificate.
inline constexpr double kDefaultCertificateTolerance = 1e-9;

class SecantViolated : public Error {
 public:
  explicit SecantViolated(const SecantReport& report)
      : Error("secant condition violated: product " + std::to_string(report.product) +
              " is not below sec(pi/n)^n for n = " + std::to_string(report.n)),
        report_(report) {}
  [[nodiscard]] std::string_view name() const noexcept override { return "SecantViolated"; }
  [[nodiscard]] const SecantReport& report() const noexcept { return report_; }

 private:
  SecantReport report_;
};

class VerificationFailed : public Error {
 public:
  VerificationFailed(double margin, double tolerance)
      : Error("constructed certificate has negativity margin " + std::to_string(margin) +
              " not above tolerance " + std::to_string(tolerance)),
        margin_(margin) {}
  [[nodiscard]] std::string_view name() const noexcept override { return "VerificationFailed"; }
  [[nodiscard]] double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

class ThresholdViolated : public Error {
 public:
  ThresholdViolated(double delta, double threshold)
      : Error("feedforward gain " + std::to_string(delta) + " is not above the shortage threshold " +
              std::to_string(threshold)),
        delta_(delta),
        threshold_(threshold) {}
  [[nodiscard]] std::string_view name() const noexcept override { return "ThresholdViolated"; }
  [[nodiscard]] double delta() const noexcept { return delta_; }
  [[nodiscard]] double threshold() const noexcept { return threshold_; }

 private:
  double delta_;
  double threshold_;
};

/// Sign-alternating scaling that maps the cyclic matrix onto its normalized
/// circulant / skew-circulant form: -Delta^{-1} A Delta has 1 on the diagonal
/// and r on the subdiagonal.
struct ScalingDelta {
  std::vector<double> diag;
  double r = 0.0;

  [[nodiscard]] std::size_t n() const noexcept { return diag.size(); }
  [[nodiscard]] Eigen::MatrixXd matrix() const {
    return Eigen::Map<const Eigen::VectorXd>(diag.data(), static_cast<Eigen::Index>(diag.size()))
        .asDiagonal();
  }
};

[[nodiscard]] inline ScalingDelta build_delta(const GainVector& gains) {
  ScalingDelta delta;
  delta.r = gains.geometric_mean();
  delta.diag.resize(gains.size());
  delta.diag[0] = 1.0;
  for (std::size_t i = 1; i < gains.size(); ++i) {
    delta.diag[i] = -delta.diag[i - 1] * gains[i] / delta.r;
  }
  return delta;
}

struct DiagonalCertificate {
  std::vector<double> d;            ///< diagonal of D = Delta^{-2}
  ScalingDelta delta;
  double negativity_margin = 0.0;   ///< min eig of -(DA + A^T D)

  /// Decay rate in dV/dt <= -eps |y|^2: the quadratic form y^T D A y equals
  /// (1/2) y^T (DA + A^T D) y, so eps is half the negativity margin.
  [[nodiscard]] double epsilon() const noexcept { return 0.5 * negativity_margin; }
};

/// Smallest eigenvalue of -(DA + A^T D). Positive means D certifies A.
/// Works on any square matrix so externally produced certificates can be checked.
[[nodiscard]] inline double verify_certificate(const Eigen::MatrixXd& a, std::span<const double> d) {
  if (a.rows() != a.cols()) throw DimensionMismatch("matrix must be square");
  if (static_cast<Eigen::Index>(d.size()) != a.rows()) {
    throw DimensionMismatch("diagonal has " + std::to_string(d.size()) + " entries, matrix is " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  for (double v : d) {
    if (!(v > 0.0)) throw InvalidArgument("diagonal entries must be positive");
  }
  const Eigen::VectorXd dv = Eigen::Map<const Eigen::VectorXd>(d.data(), a.rows());
  const Eigen::MatrixXd da = dv.asDiagonal() * a;
  const Eigen::MatrixXd form = -(da + da.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(form, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

[[nodiscard]] inline double verify_certificate(const CyclicMatrix& a, std::span<const double> d) {
  return verify_certificate(a.entries(), d);
}

/// Builds D = Delta^{-2} and verifies it numerically. Throws SecantViolated
/// when no diagonal certificate exists, VerificationFailed when the margin of
/// the constructed D does not clear `tolerance`.
[[nodiscard]] inline DiagonalCertificate build_certificate(
    const GainVector& gains, double tolerance = kDefaultCertificateTolerance) {
  const SecantReport report = secant_report(gains);
  if (!report.satisfied) throw SecantViolated(report);

  DiagonalCertificate cert;
  cert.delta = build_delta(gains);
  cert.d.reserve(gains.size());
  for (double s : cert.delta.diag) cert.d.push_back(1.0 / (s * s));
  cert.negativity_margin = verify_certificate(build_cyclic_matrix(gains), cert.d);
  if (!(cert.negativity_margin > tolerance)) {
    throw VerificationFailed(cert.negativity_margin, tolerance);
  }
  return cert;
}

/// Row-scaled matrix T A with T = diag(1 / tau_i): the state matrix of the
/// loop of first-order blocks gamma_i / (tau_i s + 1).
[[nodiscard]] inline Eigen::MatrixXd time_constant_matrix(const GainVector& gains,
                                                          std::span<const double> taus) {
  if (taus.size() != gains.size()) throw DimensionMismatch("one time constant per gain required");
  Eigen::MatrixXd a = build_cyclic_matrix(gains).entries();
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0.0)) throw InvalidArgument("time constants must be positive");
    a.row(static_cast<Eigen::Index>(i)) /= taus[i];
  }
  return a;
}

/// If D certifies A then D T^{-1} certifies T A, with the same quadratic form.
[[nodiscard]] inline std::vector<double> time_constant_weights(std::span<const double> d,
                                                               std::span<const double> taus) {
  if (taus.size() != d.size()) throw DimensionMismatch("one time constant per weight required");
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i] * taus[i];
  return out;
}

/// gamma_1 ... gamma_n cos(pi/(n+1))^{n+1}: the smallest feedforward gain
/// delta for which the cascade is input feedforward passive.
[[nodiscard]] inline double ifp_threshold(const GainVector& gains) {
  const std::size_t n = gains.size();
  return gains.product() * std::pow(cos_pi_over(n + 1), static_cast<double>(n + 1));
}

struct IfpReport {
  GainVector gains;
  double delta_threshold = 0.0;
  double delta = 0.0;
  std::vector<double> d_tilde;     ///< diag{delta, d_1, ..., d_n}
  double negativity_margin = 0.0;  ///< min eig of -(D~A~ + A~^T D~), full (u, y) form
  double epsilon = 0.0;            ///< half the margin, as for DiagonalCertificate

  /// The storage weights d_1..d_n (d_tilde without its leading delta).
  [[nodiscard]] std::vector<double> storage_weights() const {
    return {d_tilde.begin() + 1, d_tilde.end()};
  }
};

/// Augmented gains (1/delta, gamma_1, ..., gamma_n) whose cyclic matrix is A~.
[[nodiscard]] inline GainVector ifp_augmented_gains(const GainVector& gains, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  std::vector<double> g;
  g.reserve(gains.size() + 1);
  g.push_back(1.0 / delta);
  g.insert(g.end(), gains.values().begin(), gains.values().end());
  return GainVector(std::move(g));
}

[[nodiscard]] inline IfpReport ifp_certificate(const GainVector& gains, double delta,
                                               double tolerance = kDefaultCertificateTolerance) {
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  const double threshold = ifp_threshold(gains);
  if (!(delta > threshold)) throw ThresholdViolated(delta, threshold);

  const GainVector augmented = ifp_augmented_gains(gains, delta);
  const DiagonalCertificate cert = build_certificate(augmented, tolerance);

  // Uniform positive scaling keeps the form negative definite.
  const double scale = delta / cert.d.front();
  std::vector<double> d_tilde(cert.d.size());
  for (std::size_t i = 0; i < d_tilde.size(); ++i) d_tilde[i] = scale * cert.d[i];
  d_tilde.front() = delta;

  IfpReport rep{gains, threshold, delta, std::move(d_tilde), 0.0, 0.0};
  rep.negativity_margin = verify_certificate(build_cyclic_matrix(augmented), rep.d_tilde);
  rep.epsilon = 0.5 * rep.negativity_margin;
  return rep;
}

/// Absorbs a [0, kappa] sector nonlinearity into the last (first-order linear)
/// block: (gamma_1, ..., gamma_{n-1}, kappa gamma_n).
[[nodiscard]] inline GainVector popov_gains(const GainVector& gains, double kappa) {
  if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
  std::vector<double> g = gains.vector();
  g.back() *= kappa;
  return GainVector(std::move(g));
}

/// Treats the sector nonlinearity as an extra static block:
/// (gamma_1, ..., gamma_n, kappa). Conservative n+1 loop.
[[nodiscard]] inline GainVector popov_conservative_gains(const GainVector& gains, double kappa) {
  if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
  std::vector<double> g = gains.vector();
  g.push_back(kappa);
  return GainVector(std::move(g));
}

}  // namespace secant
