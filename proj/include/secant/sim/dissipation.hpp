#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "secant/sim/finite_difference.hpp"
#include "secant/sim/lyapunov.hpp"
#include "secant/sim/trajectory.hpp"

namespace secant::sim {

struct BlockDissipation {
  std::size_t block = 0;
  bool dynamic = true;
  /// Dynamic blocks: max_t dV_i/dt - (-y_i^2 + gamma_i u_i y_i).
  /// Static blocks: min_t (-y_i^2 + gamma_i u_i y_i).
  double value = 0.0;
  double tolerance = kDissipationAbsTol;
  bool ok = true;
};

struct DissipationReport {
  std::vector<BlockDissipation> blocks;

  [[nodiscard]] bool ok() const {
    return std::all_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.ok; });
  }
  /// Largest residual over dynamic blocks, or the most negative static sector
  /// value negated, whichever is worse.
  [[nodiscard]] double worst() const {
    double w = -std::numeric_limits<double>::infinity();
    for (const auto& b : blocks) w = std::max(w, b.dynamic ? b.value : -b.value);
    return blocks.empty() ? 0.0 : w;
  }
};

/// Checks the OFP inequality of every dynamic block and the sector inequality
/// of every static block at each sample.
[[nodiscard]] inline DissipationReport dissipation_monitor(const Trajectory& traj) {
  DissipationReport rep;
  const auto n = static_cast<std::size_t>(traj.samples());
  std::size_t slot = 0;
  for (std::size_t b = 0; b < traj.spec.blocks.size(); ++b) {
    BlockDissipation bd;
    bd.block = b;
    bd.dynamic = is_dynamic(traj.spec.blocks[b]);
    if (bd.dynamic) {
      std::vector<double> v(n);
      for (std::size_t k = 0; k < n; ++k) v[k] = traj.storages(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(slot));
      const auto vdot = derivative(v, traj.dt);
      bd.value = n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < n; ++k) {
        bd.value = std::max(bd.value, vdot[k] - detail::supply_rate(traj, static_cast<Eigen::Index>(k), b));
      }
      bd.tolerance = kDissipationAbsTol + derivative_error_bound(v, traj.dt);
      bd.ok = bd.value <= bd.tolerance;
      ++slot;
    } else {
      bd.value = n == 0 ? 0.0 : std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < n; ++k) {
        bd.value = std::min(bd.value, detail::supply_rate(traj, static_cast<Eigen::Index>(k), b));
      }
      bd.ok = bd.value >= -bd.tolerance;
    }
    rep.blocks.push_back(bd);
  }
  return rep;
}

}  // namespace secant::sim
