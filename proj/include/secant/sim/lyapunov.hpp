#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "secant/certificate.hpp"
#include "secant/sim/finite_difference.hpp"
#include "secant/sim/quadrature.hpp"
#include "secant/sim/trajectory.hpp"

namespace secant::sim {

/// Absolute slack added to every sampled dissipation check.
inline constexpr double kDissipationAbsTol = 1e-6;
/// Tolerance of the adaptive Simpson quadrature of the Popov integral term.
inline constexpr double kPopovQuadratureTol = 1e-10;

/// Composite storage V(t), its finite-difference derivative, and the supply
/// bound it must stay under, sample by sample.
struct LyapunovTrace {
  std::vector<double> times;
  std::vector<double> V;
  std::vector<double> Vdot;
  std::vector<double> supply;          ///< sum_i d_i (-y_i^2 + gamma_i u_i y_i)
  std::vector<double> output_norm_sq;  ///< |y|^2 entering the eps |y|^2 decrease
  double derivative_tolerance = kDissipationAbsTol;

  /// Largest one-step increase V(t_{k+1}) - V(t_k).
  [[nodiscard]] double max_increase() const {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < V.size(); ++k) m = std::max(m, V[k] - V[k - 1]);
    return V.size() < 2 ? 0.0 : m;
  }
  [[nodiscard]] double max_vdot() const {
    return Vdot.empty() ? 0.0 : *std::max_element(Vdot.begin(), Vdot.end());
  }
  /// max_t dV/dt - supply(t); <= derivative_tolerance when the storages dissipate.
  [[nodiscard]] double max_supply_residual() const {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < V.size(); ++k) m = std::max(m, Vdot[k] - supply[k]);
    return V.empty() ? 0.0 : m;
  }
  /// max_t dV/dt + eps |y|^2; <= derivative_tolerance when V decreases at rate eps.
  [[nodiscard]] double max_rate_violation(double eps) const {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < V.size(); ++k) m = std::max(m, Vdot[k] + eps * output_norm_sq[k]);
    return V.empty() ? 0.0 : m;
  }
};

namespace detail {

inline double supply_rate(const Trajectory& traj, Eigen::Index k, std::size_t block) {
  const auto b = static_cast<Eigen::Index>(block);
  const double y = traj.outputs(k, b);
  return -y * y + block_gain(traj.spec.blocks[block]) * traj.inputs(k, b) * y;
}

inline void finish_trace(LyapunovTrace& tr, double dt) {
  tr.Vdot = derivative(tr.V, dt);
  tr.derivative_tolerance = kDissipationAbsTol + derivative_error_bound(tr.V, dt);
}

}  // namespace detail

/// V(t) = sum over dynamic blocks of d_j V_j(t); static blocks carry no storage.
[[nodiscard]] inline std::vector<double> composite_storage(const Trajectory& traj, std::span<const double> d) {
  const std::size_t nd = traj.dynamic_blocks.size();
  const std::size_t nb = traj.spec.blocks.size();
  if (d.size() != nd && d.size() != nb) {
    throw DimensionMismatch("weights length " + std::to_string(d.size()) +
                            " must match the dynamic-block count " + std::to_string(nd));
  }
  std::vector<double> v(static_cast<std::size_t>(traj.samples()), 0.0);
  for (std::size_t j = 0; j < nd; ++j) {
    const double w = d.size() == nd ? d[j] : d[traj.dynamic_blocks[j]];
    for (Eigen::Index k = 0; k < traj.samples(); ++k) {
      v[static_cast<std::size_t>(k)] += w * traj.storages(k, static_cast<Eigen::Index>(j));
    }
  }
  return v;
}

/// Weighted-sum storage along a trajectory. `d` holds one weight per dynamic
/// block, or one per block; in the latter case the static blocks' nonnegative
/// sector terms are added to the supply bound as well.
[[nodiscard]] inline LyapunovTrace lyapunov_trace(const Trajectory& traj, std::span<const double> d) {
  LyapunovTrace tr;
  tr.V = composite_storage(traj, d);
  tr.times.assign(traj.times.begin(), traj.times.end());
  const std::size_t nb = traj.spec.blocks.size();
  const bool full = d.size() == nb && d.size() != traj.dynamic_blocks.size();
  const auto n = static_cast<std::size_t>(traj.samples());
  tr.supply.assign(n, 0.0);
  tr.output_norm_sq.assign(n, 0.0);
  for (Eigen::Index k = 0; k < traj.samples(); ++k) {
    const auto kk = static_cast<std::size_t>(k);
    for (std::size_t j = 0; j < traj.dynamic_blocks.size(); ++j) {
      const std::size_t b = traj.dynamic_blocks[j];
      tr.supply[kk] += (full ? d[b] : d[j]) * detail::supply_rate(traj, k, b);
    }
    if (full) {
      for (std::size_t b = 0; b < nb; ++b) {
        if (!is_dynamic(traj.spec.blocks[b])) tr.supply[kk] += d[b] * detail::supply_rate(traj, k, b);
      }
    }
    tr.output_norm_sq[kk] = traj.outputs.row(k).squaredNorm();
  }
  detail::finish_trace(tr, traj.dt);
  return tr;
}

namespace detail {

struct PopovLayout {
  std::size_t linear_block;    ///< H_n, the linear block absorbed into the composite
  std::size_t feedback_block;  ///< psi
  std::size_t linear_slot;     ///< position of H_n among the dynamic blocks
};

inline PopovLayout popov_layout(const Trajectory& traj, std::size_t weights) {
  if (traj.spec.topology != Topology::popov) throw InvalidArgument("trajectory is not a popov loop");
  const std::size_t m = traj.spec.blocks.size();
  if (weights != traj.dynamic_blocks.size()) {
    throw DimensionMismatch("weights length must match the dynamic-block count");
  }
  return {m - 2, m - 1, traj.dynamic_blocks.size() - 1};
}

}  // namespace detail

/// V = sum_{i<n} d_i V_i + d_n kappa tau_n int_0^{y_n} psi. The integral is
/// evaluated by adaptive Simpson quadrature.
[[nodiscard]] inline std::vector<double> popov_composite_storage(const Trajectory& traj, std::span<const double> d,
                                                                 double kappa, double tau_n,
                                                                 const std::function<double(double)>& psi) {
  const auto lay = detail::popov_layout(traj, d.size());
  std::vector<double> v(static_cast<std::size_t>(traj.samples()), 0.0);
  for (Eigen::Index k = 0; k < traj.samples(); ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < lay.linear_slot; ++j) acc += d[j] * traj.storages(k, static_cast<Eigen::Index>(j));
    const double yn = traj.outputs(k, static_cast<Eigen::Index>(lay.linear_block));
    acc += d[lay.linear_slot] * kappa * tau_n * adaptive_simpson(psi, 0.0, yn, kPopovQuadratureTol);
    v[static_cast<std::size_t>(k)] = acc;
  }
  return v;
}

/// Popov-form Lyapunov trace. The decrease is measured against
/// |(y_1, ..., y_{n-1}, psi(y_n))|^2 and the supply bound uses the composite
/// block's gain kappa gamma_n.
[[nodiscard]] inline LyapunovTrace popov_lyapunov_trace(const Trajectory& traj, std::span<const double> d,
                                                        double kappa, double tau_n,
                                                        const std::function<double(double)>& psi) {
  const auto lay = detail::popov_layout(traj, d.size());
  LyapunovTrace tr;
  tr.V = popov_composite_storage(traj, d, kappa, tau_n, psi);
  tr.times.assign(traj.times.begin(), traj.times.end());
  const auto n = static_cast<std::size_t>(traj.samples());
  tr.supply.assign(n, 0.0);
  tr.output_norm_sq.assign(n, 0.0);
  const double gamma_n = block_gain(traj.spec.blocks[lay.linear_block]);
  for (Eigen::Index k = 0; k < traj.samples(); ++k) {
    const auto kk = static_cast<std::size_t>(k);
    for (std::size_t j = 0; j < lay.linear_slot; ++j) {
      tr.supply[kk] += d[j] * detail::supply_rate(traj, k, traj.dynamic_blocks[j]);
    }
    const auto lb = static_cast<Eigen::Index>(lay.linear_block);
    const double p = psi(traj.outputs(k, lb));
    tr.supply[kk] += d[lay.linear_slot] * (-p * p + kappa * gamma_n * p * traj.inputs(k, lb));
    double w2 = p * p;
    for (Eigen::Index b = 0; b < lb; ++b) w2 += traj.outputs(k, b) * traj.outputs(k, b);
    tr.output_norm_sq[kk] = w2;
  }
  detail::finish_trace(tr, traj.dt);
  return tr;
}

/// Popov trace with kappa, tau_n and psi read from the trajectory's own spec.
[[nodiscard]] inline LyapunovTrace popov_lyapunov_trace(const Trajectory& traj, std::span<const double> d) {
  const auto lay = detail::popov_layout(traj, d.size());
  const auto& psi_block = std::get<StaticSector>(traj.spec.blocks[lay.feedback_block]);
  const double tau_n = std::get<LinearFirstOrder>(traj.spec.blocks[lay.linear_block]).tau;
  return popov_lyapunov_trace(traj, d, psi_block.gamma(), tau_n, [&](double y) { return psi_block(y); });
}

/// Loop gains seen by the secant certificate: every block's gain for a cyclic
/// loop; for a popov loop the feedback is merged into the linear block before it.
[[nodiscard]] inline GainVector loop_gains(const InterconnectionSpec& spec) {
  std::vector<double> g;
  for (const auto& b : spec.blocks) g.push_back(block_gain(b));
  if (spec.topology == Topology::popov) {
    const double kappa = g.back();
    g.pop_back();
    g.back() *= kappa;
  }
  return GainVector(std::move(g));
}

/// Certificate weights restricted to the dynamic blocks when the loop passes
/// the secant condition; unit weights otherwise and for cascades.
[[nodiscard]] inline std::vector<double> default_weights(const InterconnectionSpec& spec) {
  const auto dyn = dynamic_indices(spec);
  std::vector<double> ones(dyn.size(), 1.0);
  if (spec.topology == Topology::cascade) return ones;
  try {
    const DiagonalCertificate cert = build_certificate(loop_gains(spec));
    std::vector<double> w;
    w.reserve(dyn.size());
    for (std::size_t b : dyn) w.push_back(cert.d[b]);
    return w;
  } catch (const SecantViolated&) {
    return ones;
  } catch (const VerificationFailed&) {
    return ones;
  }
}

}  // namespace secant::sim
