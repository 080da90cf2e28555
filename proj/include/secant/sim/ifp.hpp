#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "secant/certificate.hpp"
#include "secant/sim/simulate.hpp"

namespace secant::sim {

/// Sampled check of dV/dt <= -eps |y|^2 + delta u^2 + u y_n along a cascade.
struct IfpInequalityCheck {
  std::vector<double> V;
  std::vector<double> Vdot;
  std::vector<double> bound;  ///< -eps |y|^2 + delta u^2 + u y_n
  double max_violation = 0.0; ///< max_t dV/dt - bound
  double tolerance = kDissipationAbsTol;
  [[nodiscard]] bool holds() const noexcept { return max_violation <= tolerance; }
};

[[nodiscard]] inline IfpInequalityCheck ifp_inequality(const Trajectory& traj, std::span<const double> weights,
                                                       double delta, double epsilon) {
  if (traj.spec.topology != Topology::cascade) throw InvalidArgument("IFP check needs a cascade trajectory");
  IfpInequalityCheck chk;
  chk.V = composite_storage(traj, weights);
  chk.Vdot = derivative(chk.V, traj.dt);
  chk.tolerance = kDissipationAbsTol + derivative_error_bound(chk.V, traj.dt);
  const auto last = static_cast<Eigen::Index>(traj.spec.blocks.size() - 1);
  chk.bound.resize(chk.V.size());
  chk.max_violation = chk.V.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < traj.samples(); ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double u = traj.inputs(k, 0);
    chk.bound[kk] = -epsilon * traj.outputs.row(k).squaredNorm() + delta * u * u + u * traj.outputs(k, last);
    chk.max_violation = std::max(chk.max_violation, chk.Vdot[kk] - chk.bound[kk]);
  }
  return chk;
}

struct IfpExperimentReport {
  IfpReport certificate;
  Trajectory trajectory;
  IfpInequalityCheck check;
};

/// Simulates the cascade of dynamic OFP blocks under `input` and verifies the
/// input feedforward passivity inequality with the weights and eps of
/// ifp_certificate.
[[nodiscard]] inline IfpExperimentReport ifp_experiment(const std::vector<BlockSpec>& blocks, double delta,
                                                        const InputSignal& input, std::span<const double> x0,
                                                        double dt, double t_end) {
  std::vector<double> g;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!is_dynamic(blocks[i])) {
      throw InvalidSpec("blocks[" + std::to_string(i) + "]", "IFP cascade blocks must be dynamic");
    }
    g.push_back(block_gain(blocks[i]));
  }
  if (g.empty()) throw InvalidSpec("blocks", "at least one block required");
  IfpReport cert = ifp_certificate(GainVector(g), delta);
  const std::vector<double> w = cert.storage_weights();
  InterconnectionSpec spec{Topology::cascade, blocks, input};
  Trajectory traj = simulate(spec, x0, dt, t_end, w);
  IfpInequalityCheck chk = ifp_inequality(traj, w, cert.delta, cert.epsilon);
  return {std::move(cert), std::move(traj), std::move(chk)};
}

/// Cascade of unit-time-constant linear blocks realizing `gains`, started at rest.
[[nodiscard]] inline IfpExperimentReport ifp_experiment(const GainVector& gains, double delta,
                                                        const InputSignal& input, double dt, double t_end) {
  std::vector<BlockSpec> blocks;
  for (double g : gains.values()) blocks.emplace_back(LinearFirstOrder{1.0, g});
  const std::vector<double> x0(gains.size(), 0.0);
  return ifp_experiment(blocks, delta, input, x0, dt, t_end);
}

}  // namespace secant::sim
