#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "secant/errors.hpp"
#include "secant/sim/blocks.hpp"

namespace secant::sim {

/// Validation failure; the message starts with the offending field path.
class InvalidSpec : public Error {
 public:
  InvalidSpec(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  [[nodiscard]] std::string_view name() const noexcept override { return "InvalidSpec"; }
  [[nodiscard]] const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class Topology {
  cyclic,   ///< u_1 = -y_n + u_ext, u_i = y_{i-1}
  cascade,  ///< u_1 = u_ext, u_i = y_{i-1}
  popov,    ///< cyclic loop whose last block is the static feedback psi
};

[[nodiscard]] inline std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::cyclic: return "cyclic";
    case Topology::cascade: return "cascade";
    case Topology::popov: return "popov";
  }
  return "cyclic";
}

struct ZeroInput {
  friend bool operator==(const ZeroInput&, const ZeroInput&) = default;
};
/// u(t) = height for t >= 0.
struct StepInput {
  double height = 1.0;
  friend bool operator==(const StepInput&, const StepInput&) = default;
};
/// u(t) = amplitude sin(frequency t), frequency in rad per time unit.
struct SineInput {
  double amplitude = 1.0;
  double frequency = 1.0;
  friend bool operator==(const SineInput&, const SineInput&) = default;
};
/// Piecewise-linear through (t_k, u_k), held constant outside.
struct SampledInput {
  std::vector<double> t;
  std::vector<double> u;
  friend bool operator==(const SampledInput&, const SampledInput&) = default;
};

using InputSignal = std::variant<ZeroInput, StepInput, SineInput, SampledInput>;

[[nodiscard]] inline double evaluate(const InputSignal& in, double t) {
  if (std::holds_alternative<ZeroInput>(in)) return 0.0;
  if (const auto* s = std::get_if<StepInput>(&in)) return t >= 0.0 ? s->height : 0.0;
  if (const auto* s = std::get_if<SineInput>(&in)) return s->amplitude * std::sin(s->frequency * t);
  const auto& smp = std::get<SampledInput>(in);
  if (t <= smp.t.front()) return smp.u.front();
  if (t >= smp.t.back()) return smp.u.back();
  const auto k = static_cast<std::size_t>(std::upper_bound(smp.t.begin(), smp.t.end(), t) - smp.t.begin());
  const double w = (t - smp.t[k - 1]) / (smp.t[k] - smp.t[k - 1]);
  return (1.0 - w) * smp.u[k - 1] + w * smp.u[k];
}

struct InterconnectionSpec {
  Topology topology = Topology::cyclic;
  std::vector<BlockSpec> blocks;
  InputSignal input = ZeroInput{};

  friend bool operator==(const InterconnectionSpec&, const InterconnectionSpec&) = default;
};

/// Indices of blocks that carry a state (and a storage function).
[[nodiscard]] inline std::vector<std::size_t> dynamic_indices(const InterconnectionSpec& spec) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
    if (is_dynamic(spec.blocks[i])) idx.push_back(i);
  }
  return idx;
}

inline void validate(const InterconnectionSpec& spec) {
  if (spec.blocks.empty()) throw InvalidSpec("blocks", "at least one block required");

  for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
    const std::string path = "blocks[" + std::to_string(i) + "]";
    const auto positive = [&](double v, const char* field) {
      if (!std::isfinite(v) || !(v > 0.0)) throw InvalidSpec(path + "." + field, "must be positive");
    };
    if (const auto* lin = std::get_if<LinearFirstOrder>(&spec.blocks[i])) {
      positive(lin->tau, "tau");
      positive(lin->gamma, "gamma");
    } else if (const auto* ofp = std::get_if<NonlinearOfp>(&spec.blocks[i])) {
      positive(ofp->gamma, "gamma");
      if (!std::isfinite(ofp->a) || ofp->a < 0.0) throw InvalidSpec(path + ".a", "must be nonnegative");
    }
  }

  const auto dyn = dynamic_indices(spec);
  if (spec.topology != Topology::cascade && dyn.empty()) {
    // A loop of memoryless blocks is an algebraic loop.
    throw InvalidSpec("blocks", "a feedback loop needs at least one dynamic block");
  }
  if (spec.topology == Topology::popov) {
    const std::size_t m = spec.blocks.size();
    if (m < 2) throw InvalidSpec("blocks", "popov loop needs a linear block followed by the sector feedback");
    if (is_dynamic(spec.blocks[m - 1])) {
      throw InvalidSpec("blocks[" + std::to_string(m - 1) + "]", "popov feedback must be a sector block");
    }
    if (!std::holds_alternative<LinearFirstOrder>(spec.blocks[m - 2])) {
      throw InvalidSpec("blocks[" + std::to_string(m - 2) + "]",
                        "block preceding the popov feedback must be linear first-order");
    }
  }

  if (const auto* smp = std::get_if<SampledInput>(&spec.input)) {
    if (smp->t.empty() || smp->t.size() != smp->u.size()) {
      throw InvalidSpec("input", "sampled input needs matching, nonempty t and u");
    }
    for (std::size_t k = 1; k < smp->t.size(); ++k) {
      if (!(smp->t[k] > smp->t[k - 1])) throw InvalidSpec("input.t", "sample times must increase strictly");
    }
  }
}

}  // namespace secant::sim
