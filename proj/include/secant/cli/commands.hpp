#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "secant/certificate.hpp"
#include "secant/cli/config.hpp"
#include "secant/core_matrix.hpp"
#include "secant/sim/csv.hpp"
#include "secant/sim/finite_difference.hpp"
#include "secant/sim/simulate.hpp"
#include "secant/spectral.hpp"

namespace secant::cli {

/// Exit-code contract shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitViolated = 2,
  kExitDiverged = 3,
};

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json payload;
};

/// Parses "g1,g2,...". Throws InvalidArgument on anything that is not a
/// comma-separated list of numbers.
[[nodiscard]] inline std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  if (text.empty()) throw InvalidArgument("malformed gain list: empty");
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
      throw InvalidArgument("malformed gain list: '" + std::string(item) + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

[[nodiscard]] inline nlohmann::json to_json(const SecantReport& rep) {
  return {{"n", rep.n},
          {"product", rep.product},
          {"r", rep.r},
          {"bound", rep.bound()},
          {"margin", rep.margin},
          {"satisfied", rep.satisfied}};
}

[[nodiscard]] inline nlohmann::json error_payload(const Error& e) {
  return {{"error", std::string(e.name())}, {"message", e.what()}};
}

namespace detail {

template <class F>
CommandResult guarded(F&& body) {
  try {
    return body();
  } catch (const SecantViolated& e) {
    auto p = error_payload(e);
    p["report"] = to_json(e.report());
    return {kExitViolated, std::move(p)};
  } catch (const VerificationFailed& e) {
    auto p = error_payload(e);
    p["negativity_margin"] = e.margin();
    return {kExitViolated, std::move(p)};
  } catch (const ThresholdViolated& e) {
    auto p = error_payload(e);
    p["delta"] = e.delta();
    p["threshold"] = e.threshold();
    return {kExitViolated, std::move(p)};
  } catch (const sim::InvalidSpec& e) {
    auto p = error_payload(e);
    p["field"] = e.field();
    return {kExitUsage, std::move(p)};
  } catch (const Error& e) {
    return {kExitUsage, error_payload(e)};
  }
}

}  // namespace detail

[[nodiscard]] inline CommandResult cmd_check(const std::vector<double>& gains) {
  return detail::guarded([&] {
    const SecantReport rep = secant_report(GainVector(gains));
    return CommandResult{rep.satisfied ? kExitOk : kExitViolated, to_json(rep)};
  });
}

[[nodiscard]] inline CommandResult cmd_certify(const std::vector<double>& gains,
                                               double tolerance = kDefaultCertificateTolerance) {
  return detail::guarded([&] {
    if (!(tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
    const DiagonalCertificate cert = build_certificate(GainVector(gains), tolerance);
    return CommandResult{kExitOk,
                         {{"d", cert.d},
                          {"delta", cert.delta.diag},
                          {"r", cert.delta.r},
                          {"negativity_margin", cert.negativity_margin},
                          {"epsilon", cert.epsilon()}}};
  });
}

[[nodiscard]] inline CommandResult cmd_spectrum(double r, long long n) {
  return detail::guarded([&] {
    if (n < 1) throw InvalidArgument("n must be at least 1");
    const auto s = circulant_spectrum(r, static_cast<std::size_t>(n));
    nlohmann::json eig = nlohmann::json::array();
    for (const auto& l : s.eigenvalues) eig.push_back({{"re", l.real()}, {"im", l.imag()}});
    return CommandResult{kExitOk,
                         {{"n", s.n},
                          {"r", s.r},
                          {"structure", s.n % 2 == 1 ? "circulant" : "skew-circulant"},
                          {"eigenvalues", std::move(eig)},
                          {"min_real_part", s.min_real_part},
                          {"symmetric_part_min_eig", symmetric_part_min_eig(r, s.n)}}};
  });
}

[[nodiscard]] inline CommandResult cmd_popov(const std::vector<double>& gains, double kappa) {
  return detail::guarded([&] {
    const GainVector g(gains);
    const GainVector relaxed = popov_gains(g, kappa);
    const SecantReport rel = secant_report(relaxed);
    const SecantReport cons = secant_report(popov_conservative_gains(g, kappa));
    return CommandResult{rel.satisfied ? kExitOk : kExitViolated,
                         {{"effective_gains", relaxed.vector()},
                          {"kappa", kappa},
                          {"relaxed", to_json(rel)},
                          {"conservative", to_json(cons)},
                          {"satisfied", rel.satisfied}}};
  });
}

/// Default delta when none is given: threshold times (1 + kIfpDefaultMargin).
inline constexpr double kIfpDefaultMargin = 0.01;

[[nodiscard]] inline CommandResult cmd_ifp(const std::vector<double>& gains, std::optional<double> delta,
                                           double tolerance = kDefaultCertificateTolerance) {
  return detail::guarded([&] {
    const GainVector g(gains);
    const double threshold = ifp_threshold(g);
    double chosen = delta.value_or(threshold * (1.0 + kIfpDefaultMargin));
    // n = 1 has threshold 0: any positive delta works.
    if (!delta && !(chosen > 0.0)) chosen = kIfpDefaultMargin;
    const IfpReport rep = ifp_certificate(g, chosen, tolerance);
    return CommandResult{kExitOk,
                         {{"threshold", rep.delta_threshold},
                          {"delta", rep.delta},
                          {"d_tilde", rep.d_tilde},
                          {"storage_weights", rep.storage_weights()},
                          {"negativity_margin", rep.negativity_margin},
                          {"epsilon", rep.epsilon}}};
  });
}

/// Peak of |x(t) - x(T)| over the last quarter of the run divided by the
/// peak over the quarter before it.
[[nodiscard]] inline double decay_ratio(const sim::Trajectory& traj) {
  const Eigen::Index n = traj.samples();
  if (n < 8 || traj.states.cols() == 0) return 0.0;
  const Eigen::RowVectorXd final_state = traj.states.row(n - 1);
  auto peak = [&](Eigen::Index from, Eigen::Index to) {
    double m = 0.0;
    for (Eigen::Index k = from; k < to; ++k) m = std::max(m, (traj.states.row(k) - final_state).norm());
    return m;
  };
  const double third = peak(n / 2, 3 * n / 4);
  const double last = peak(3 * n / 4, n);
  if (third == 0.0) return last == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return last / third;
}

/// Summary of a finished run as reported by `simulate`.
[[nodiscard]] inline nlohmann::json simulation_summary(const sim::Trajectory& traj) {
  const Eigen::Index n = traj.samples();
  const double final_norm = n > 0 && traj.states.cols() > 0 ? traj.states.row(n - 1).norm() : 0.0;
  const double ratio = decay_ratio(traj);
  const bool settled = final_norm == 0.0 || ratio < 0.99;

  std::vector<double> v(traj.composite_V.begin(), traj.composite_V.end());
  const auto vdot = sim::derivative(v, traj.dt);
  double min_margin = vdot.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (double d : vdot) min_margin = std::min(min_margin, -d);

  const auto diss = sim::dissipation_monitor(traj);
  return {{"topology", std::string(sim::to_string(traj.spec.topology))},
          {"samples", n},
          {"t_final", n > 0 ? traj.times(n - 1) : 0.0},
          {"diverged", traj.diverged},
          {"converged", !traj.diverged && settled},
          {"final_state_norm", final_norm},
          {"decay_ratio", ratio},
          {"weights", traj.weights},
          {"max_dissipation_residual", diss.worst()},
          {"dissipation_ok", diss.ok()},
          {"min_composite_vdot_margin", min_margin}};
}

[[nodiscard]] inline CommandResult cmd_simulate(const SimulationConfig& cfg, std::ostream* csv) {
  return detail::guarded([&] {
    const std::vector<double> w = cfg.weights.value_or(std::vector<double>{});
    const sim::Trajectory traj = sim::simulate(cfg.spec, cfg.x0, cfg.dt, cfg.t_end, w);
    if (csv != nullptr) sim::write_csv(*csv, traj);
    return CommandResult{traj.diverged ? kExitDiverged : kExitOk, simulation_summary(traj)};
  });
}

[[nodiscard]] inline CommandResult cmd_simulate(const std::string& config_path, const std::string& out_path) {
  std::ifstream in(config_path);
  if (!in) {
    return {kExitUsage, {{"error", "InvalidArgument"}, {"message", "cannot open config '" + config_path + "'"}}};
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    return {kExitUsage, {{"error", "InvalidSpec"}, {"message", e.what()}, {"field", ""}}};
  }
  std::optional<SimulationConfig> cfg;
  CommandResult parsed = detail::guarded([&] {
    cfg = parse_config(j);
    return CommandResult{};
  });
  if (!cfg) return parsed;

  if (out_path.empty()) return cmd_simulate(*cfg, nullptr);
  std::ofstream out(out_path);
  if (!out) {
    return {kExitUsage, {{"error", "InvalidArgument"}, {"message", "cannot write '" + out_path + "'"}}};
  }
  CommandResult res = cmd_simulate(*cfg, &out);
  res.payload["csv"] = out_path;
  return res;
}

}  // namespace secant::cli
