#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "secant/sim/dissipation.hpp"
#include "secant/sim/interconnection.hpp"
#include "secant/sim/lyapunov.hpp"
#include "secant/sim/trajectory.hpp"

namespace secant::sim {

class StepTooLarge : public Error {
 public:
  using Error::Error;
  [[nodiscard]] std::string_view name() const noexcept override { return "StepTooLarge"; }
};

/// States beyond this magnitude are treated as divergence.
inline constexpr double kDivergenceBound = 1e100;

/// Block inputs u and outputs y for the given dynamic states at time t.
/// Static blocks are evaluated in signal-flow order starting after the first
/// dynamic block, so every static input is known when it is needed.
inline void evaluate_signals(const InterconnectionSpec& spec, std::span<const std::size_t> dyn, double t,
                             const Eigen::VectorXd& x, Eigen::VectorXd& u, Eigen::VectorXd& y) {
  const std::size_t m = spec.blocks.size();
  const double u_ext = evaluate(spec.input, t);
  for (std::size_t j = 0; j < dyn.size(); ++j) y(static_cast<Eigen::Index>(dyn[j])) = x(static_cast<Eigen::Index>(j));

  auto input_of = [&](std::size_t i) -> double {
    if (i > 0) return y(static_cast<Eigen::Index>(i - 1));
    if (spec.topology == Topology::cascade) return u_ext;
    return -y(static_cast<Eigen::Index>(m - 1)) + u_ext;
  };
  auto visit = [&](std::size_t i) {
    const auto ii = static_cast<Eigen::Index>(i);
    u(ii) = input_of(i);
    if (const auto* s = std::get_if<StaticSector>(&spec.blocks[i])) y(ii) = (*s)(u(ii));
  };

  if (spec.topology == Topology::cascade) {
    for (std::size_t i = 0; i < m; ++i) visit(i);
    return;
  }
  const std::size_t start = dyn.front();
  for (std::size_t s = 1; s <= m; ++s) visit((start + s) % m);
}

namespace detail {

inline void rhs(const InterconnectionSpec& spec, std::span<const std::size_t> dyn, double t,
                const Eigen::VectorXd& x, Eigen::VectorXd& u, Eigen::VectorXd& y, Eigen::VectorXd& dx) {
  evaluate_signals(spec, dyn, t, x, u, y);
  for (std::size_t j = 0; j < dyn.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    const double ui = u(static_cast<Eigen::Index>(dyn[j]));
    const auto& b = spec.blocks[dyn[j]];
    if (const auto* lin = std::get_if<LinearFirstOrder>(&b)) {
      dx(jj) = (-x(jj) + lin->gamma * ui) / lin->tau;
    } else {
      const auto& ofp = std::get<NonlinearOfp>(b);
      dx(jj) = -x(jj) - ofp.a * x(jj) * x(jj) * x(jj) + ofp.gamma * ui;
    }
  }
}

inline double storage(const BlockSpec& b, double x) {
  if (const auto* lin = std::get_if<LinearFirstOrder>(&b)) return 0.5 * lin->tau * x * x;
  return 0.5 * x * x;
}

}  // namespace detail

/// Integrates the interconnection with classical fixed-step RK4 on the grid
/// t_k = k dt, k = 0..round(t_end / dt). Requires dt < min(tau_i) / 10.
/// Divergence truncates the run and sets `diverged` instead of throwing.
/// `weights` (one per dynamic block) define composite_V; when empty the
/// loop's certificate weights are used if it has one.
[[nodiscard]] inline Trajectory simulate(const InterconnectionSpec& spec, std::span<const double> x0, double dt,
                                         double t_end, std::span<const double> weights = {}) {
  validate(spec);
  const auto dyn = dynamic_indices(spec);
  if (x0.size() != dyn.size()) {
    throw InvalidSpec("x0", "expected " + std::to_string(dyn.size()) + " initial states, got " +
                                std::to_string(x0.size()));
  }
  for (double v : x0) {
    if (!std::isfinite(v)) throw InvalidSpec("x0", "initial states must be finite");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidSpec("dt", "must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidSpec("t_end", "must be positive");
  double min_tau = std::numeric_limits<double>::infinity();
  for (std::size_t b : dyn) min_tau = std::min(min_tau, block_time_constant(spec.blocks[b]));
  if (!(dt < min_tau / 10.0)) {
    throw StepTooLarge("dt = " + std::to_string(dt) + " must be below min(tau)/10 = " +
                       std::to_string(min_tau / 10.0));
  }
  if (!weights.empty() && weights.size() != dyn.size()) {
    throw DimensionMismatch("weights length must match the dynamic-block count");
  }

  const auto steps = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::llround(t_end / dt)));
  const auto nb = static_cast<Eigen::Index>(spec.blocks.size());
  const auto nx = static_cast<Eigen::Index>(dyn.size());

  Trajectory traj;
  traj.spec = spec;
  traj.dt = dt;
  traj.dynamic_blocks = dyn;
  traj.times.resize(steps + 1);
  traj.states.resize(steps + 1, nx);
  traj.inputs.resize(steps + 1, nb);
  traj.outputs.resize(steps + 1, nb);
  traj.storages.resize(steps + 1, nx);

  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(x0.data(), nx);
  Eigen::VectorXd u(nb), y(nb), k1(nx), k2(nx), k3(nx), k4(nx), tmp(nx);
  y.setZero();

  auto record = [&](Eigen::Index k, double t) {
    evaluate_signals(spec, dyn, t, x, u, y);
    traj.times(k) = t;
    traj.states.row(k) = x.transpose();
    traj.inputs.row(k) = u.transpose();
    traj.outputs.row(k) = y.transpose();
    for (Eigen::Index j = 0; j < nx; ++j) {
      traj.storages(k, j) = detail::storage(spec.blocks[dyn[static_cast<std::size_t>(j)]], x(j));
    }
  };

  record(0, 0.0);
  Eigen::Index last = steps;
  for (Eigen::Index k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    detail::rhs(spec, dyn, t, x, u, y, k1);
    tmp = x + 0.5 * dt * k1;
    detail::rhs(spec, dyn, t + 0.5 * dt, tmp, u, y, k2);
    tmp = x + 0.5 * dt * k2;
    detail::rhs(spec, dyn, t + 0.5 * dt, tmp, u, y, k3);
    tmp = x + dt * k3;
    detail::rhs(spec, dyn, t + dt, tmp, u, y, k4);
    tmp = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!tmp.allFinite() || tmp.cwiseAbs().maxCoeff() > kDivergenceBound) {
      traj.diverged = true;
      last = k;
      break;
    }
    x = tmp;
    record(k + 1, static_cast<double>(k + 1) * dt);
  }
  if (traj.diverged) {
    traj.times.conservativeResize(last + 1);
    traj.states.conservativeResize(last + 1, nx);
    traj.inputs.conservativeResize(last + 1, nb);
    traj.outputs.conservativeResize(last + 1, nb);
    traj.storages.conservativeResize(last + 1, nx);
  }

  traj.weights = weights.empty() ? default_weights(spec) : std::vector<double>(weights.begin(), weights.end());
  std::vector<double> v = spec.topology == Topology::popov ? popov_lyapunov_trace(traj, traj.weights).V
                                                           : composite_storage(traj, traj.weights);
  traj.composite_V = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));

  for (const auto& b : dissipation_monitor(traj).blocks) traj.dissipation_residuals.push_back(b.value);
  return traj;
}

}  // namespace secant::sim
