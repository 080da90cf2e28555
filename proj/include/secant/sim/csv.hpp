#pragma once

#include <cstddef>
#include <iomanip>
#include <ostream>

#include "secant/sim/trajectory.hpp"

namespace secant::sim {

/// Header `t,x_j..,u_i..,y_i..,V_j..,V`: x_j and V_j for the dynamic blocks
/// (1-based block index j), u_i and y_i for every block. 17 significant digits.
inline void write_csv(std::ostream& os, const Trajectory& traj) {
  const std::size_t nb = traj.spec.blocks.size();
  os << "t";
  for (std::size_t b : traj.dynamic_blocks) os << ",x_" << b + 1;
  for (std::size_t i = 0; i < nb; ++i) os << ",u_" << i + 1;
  for (std::size_t i = 0; i < nb; ++i) os << ",y_" << i + 1;
  for (std::size_t b : traj.dynamic_blocks) os << ",V_" << b + 1;
  os << ",V\n";

  const auto old_precision = os.precision(17);
  const auto nx = static_cast<Eigen::Index>(traj.dynamic_blocks.size());
  const auto nbi = static_cast<Eigen::Index>(nb);
  for (Eigen::Index k = 0; k < traj.samples(); ++k) {
    os << traj.times(k);
    for (Eigen::Index j = 0; j < nx; ++j) os << ',' << traj.states(k, j);
    for (Eigen::Index i = 0; i < nbi; ++i) os << ',' << traj.inputs(k, i);
    for (Eigen::Index i = 0; i < nbi; ++i) os << ',' << traj.outputs(k, i);
    for (Eigen::Index j = 0; j < nx; ++j) os << ',' << traj.storages(k, j);
    os << ',' << traj.composite_V(k) << '\n';
  }
  os.precision(old_precision);
}

}  // namespace secant::sim
