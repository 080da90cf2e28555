#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "secant/errors.hpp"

namespace secant::sim {

/// tau dy/dt = -y + gamma u. Storage V = (tau/2) y^2 satisfies the OFP
/// inequality with equality: dV/dt = -y^2 + gamma u y.
struct LinearFirstOrder {
  double tau = 1.0;
  double gamma = 1.0;
  friend bool operator==(const LinearFirstOrder&, const LinearFirstOrder&) = default;
};

/// dx/dt = -x - a x^3 + gamma u, y = x. Storage V = x^2/2 gives
/// dV/dt = -y^2 - a y^4 + gamma u y <= -y^2 + gamma u y.
struct NonlinearOfp {
  double gamma = 1.0;
  double a = 0.0;
  friend bool operator==(const NonlinearOfp&, const NonlinearOfp&) = default;
};

/// y = gamma u / (1 + |u|)
struct ScaledSoftsat {
  friend bool operator==(const ScaledSoftsat&, const ScaledSoftsat&) = default;
};

/// y = gamma u, the upper edge of the sector.
struct LinearSector {
  friend bool operator==(const LinearSector&, const LinearSector&) = default;
};

/// psi(u) = h(offset) - h(max(u + offset, 0)), h(x) = 1 / (1 + x^p): a
/// repression-type Hill curve shifted through the origin. The block output is
/// psi rescaled so that sup psi(u)/u equals the block's gamma.
struct ShiftedHill {
  int p = 2;
  double offset = 1.0;
  friend bool operator==(const ShiftedHill&, const ShiftedHill&) = default;
};

/// Piecewise-linear table through (u_k, y_k), held constant outside the
/// sampled range. Must contain (0, 0) and stay inside the sector.
struct UserTable {
  std::vector<double> u;
  std::vector<double> y;
  friend bool operator==(const UserTable&, const UserTable&) = default;
};

using SectorShape = std::variant<ScaledSoftsat, LinearSector, ShiftedHill, UserTable>;

namespace detail {

inline double hill(double x, int p) { return 1.0 / (1.0 + std::pow(x, p)); }

inline double shifted_hill_raw(const ShiftedHill& s, double u) {
  return hill(s.offset, s.p) - hill(std::max(u + s.offset, 0.0), s.p);
}

/// sup over u != 0 of shifted_hill_raw(u) / u.
inline double shifted_hill_sector_bound(const ShiftedHill& s) {
  auto ratio = [&](double u) { return shifted_hill_raw(s, u) / u; };

  // Limit at u -> 0+ is -h'(offset).
  const double x = s.offset;
  double best = x > 0.0 || s.p == 1
                    ? s.p * std::pow(x, s.p - 1) / std::pow(1.0 + std::pow(x, s.p), 2)
                    : 0.0;

  std::vector<double> grid;
  constexpr int kPerSide = 4000;
  for (int k = 0; k <= kPerSide; ++k) {
    const double mag = std::pow(10.0, -8.0 + 12.0 * k / kPerSide);
    grid.push_back(mag);
    grid.push_back(-mag);
  }
  std::sort(grid.begin(), grid.end());

  std::size_t arg = 0;
  double grid_best = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double q = ratio(grid[i]);
    if (q > grid_best) {
      grid_best = q;
      arg = i;
    }
  }
  // Golden-section refinement inside the bracketing grid cell, kept on one
  // side of the origin.
  double lo = grid[arg > 0 ? arg - 1 : arg];
  double hi = grid[arg + 1 < grid.size() ? arg + 1 : arg];
  if (lo < 0.0 && hi > 0.0) (grid[arg] > 0.0 ? lo : hi) = grid[arg];
  constexpr double kInvPhi = 0.6180339887498949;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    if (ratio(c) > ratio(d)) {
      hi = d;
    } else {
      lo = c;
    }
    c = hi - kInvPhi * (hi - lo);
    d = lo + kInvPhi * (hi - lo);
  }
  best = std::max({best, grid_best, ratio(0.5 * (lo + hi))});
  // Inflate so the rescaled curve stays strictly inside the sector.
  return best * (1.0 + 1e-9);
}

}  // namespace detail

/// Memoryless sector block y = psi(u) with 0 <= -y^2 + gamma u y.
class StaticSector {
 public:
  StaticSector(double gamma, SectorShape shape) : gamma_(gamma), shape_(std::move(shape)) {
    if (!(gamma_ > 0.0) || !std::isfinite(gamma_)) throw InvalidArgument("sector gain must be positive");
    if (const auto* hill = std::get_if<ShiftedHill>(&shape_)) {
      if (hill->p < 1) throw InvalidArgument("hill exponent p must be at least 1");
      if (!(hill->offset >= 0.0)) throw InvalidArgument("hill offset must be nonnegative");
      hill_scale_ = gamma_ / detail::shifted_hill_sector_bound(*hill);
    } else if (const auto* table = std::get_if<UserTable>(&shape_)) {
      validate_table(*table);
    }
  }

  [[nodiscard]] double gamma() const noexcept { return gamma_; }
  [[nodiscard]] const SectorShape& shape() const noexcept { return shape_; }

  [[nodiscard]] double operator()(double u) const {
    return std::visit(
        [&](const auto& s) -> double {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, ScaledSoftsat>) {
            return gamma_ * u / (1.0 + std::abs(u));
          } else if constexpr (std::is_same_v<S, LinearSector>) {
            return gamma_ * u;
          } else if constexpr (std::is_same_v<S, ShiftedHill>) {
            return hill_scale_ * detail::shifted_hill_raw(s, u);
          } else {
            return interpolate(s, u);
          }
        },
        shape_);
  }

  friend bool operator==(const StaticSector& a, const StaticSector& b) {
    return a.gamma_ == b.gamma_ && a.shape_ == b.shape_;
  }

 private:
  void validate_table(const UserTable& t) const {
    if (t.u.size() != t.y.size() || t.u.empty()) {
      throw InvalidArgument("table needs matching, nonempty u and y samples");
    }
    bool has_origin = false;
    for (std::size_t k = 0; k < t.u.size(); ++k) {
      if (k > 0 && !(t.u[k] > t.u[k - 1])) throw InvalidArgument("table u samples must increase strictly");
      if (t.u[k] == 0.0 && t.y[k] == 0.0) has_origin = true;
      if (t.y[k] * (gamma_ * t.u[k] - t.y[k]) < 0.0) {
        throw InvalidArgument("table sample " + std::to_string(k) + " lies outside the sector");
      }
    }
    if (!has_origin) throw InvalidArgument("table must contain the sample (0, 0)");
  }

  static double interpolate(const UserTable& t, double u) {
    if (u <= t.u.front()) return t.y.front();
    if (u >= t.u.back()) return t.y.back();
    const auto it = std::upper_bound(t.u.begin(), t.u.end(), u);
    const auto k = static_cast<std::size_t>(it - t.u.begin());
    const double w = (u - t.u[k - 1]) / (t.u[k] - t.u[k - 1]);
    return (1.0 - w) * t.y[k - 1] + w * t.y[k];
  }

  double gamma_;
  SectorShape shape_;
  double hill_scale_ = 1.0;
};

using BlockSpec = std::variant<LinearFirstOrder, NonlinearOfp, StaticSector>;

[[nodiscard]] inline bool is_dynamic(const BlockSpec& b) noexcept {
  return !std::holds_alternative<StaticSector>(b);
}

[[nodiscard]] inline double block_gain(const BlockSpec& b) {
  return std::visit(
      [](const auto& blk) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(blk)>, StaticSector>) {
          return blk.gamma();
        } else {
          return blk.gamma;
        }
      },
      b);
}

/// Time constant used by the step-size precondition; the
/// cubic OFP block has unit time constant.
[[nodiscard]] inline double block_time_constant(const BlockSpec& b) {
  if (const auto* lin = std::get_if<LinearFirstOrder>(&b)) return lin->tau;
  return 1.0;
}

}  // namespace secant::sim
