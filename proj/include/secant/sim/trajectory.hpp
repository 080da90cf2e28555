#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "secant/sim/interconnection.hpp"

namespace secant::sim {

/// Uniformly sampled run of an interconnection. Row k of every matrix is the
/// sample at times[k] = k dt. Columns of `inputs`/`outputs` index blocks;
/// columns of `states`/`storages` index the dynamic blocks in order.
struct Trajectory {
  InterconnectionSpec spec;
  double dt = 0.0;
  std::vector<std::size_t> dynamic_blocks;
  Eigen::VectorXd times;
  Eigen::MatrixXd states;
  Eigen::MatrixXd inputs;
  Eigen::MatrixXd outputs;
  Eigen::MatrixXd storages;
  std::vector<double> weights;       ///< weights behind composite_V, one per dynamic block
  Eigen::VectorXd composite_V;
  std::vector<double> dissipation_residuals;  ///< per block, see dissipation_monitor
  bool diverged = false;                      ///< truncated at a non-finite or runaway state

  [[nodiscard]] Eigen::Index samples() const noexcept { return times.size(); }
};

}  // namespace secant::sim
