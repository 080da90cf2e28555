#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "secant/sim/interconnection.hpp"

namespace secant::cli {

/// A simulation run as read from a JSON config file.
///
///   { "topology": "cyclic" | "cascade" | "popov",
///     "blocks": [ {"kind": "linear", "tau": f, "gamma": f}
///               | {"kind": "ofp_cubic", "a": f, "gamma": f}
///               | {"kind": "sector", "shape": "softsat" | "linear" | "hill" | "table",
///                  "param": f, "p": i, "offset": f, "table": [[u, y], ...]} ],
///     "x0": [f, ...], "dt": f, "t_end": f,
///     "input": {"kind": "zero"} | {"kind": "step", "height": f}
///            | {"kind": "sin", "amplitude": f, "frequency": f}
///            | {"kind": "samples", "t": [f, ...], "u": [f, ...]},
///     "weights": [f, ...] }            // optional
struct SimulationConfig {
  sim::InterconnectionSpec spec;
  std::vector<double> x0;
  double dt = 0.0;
  double t_end = 0.0;
  std::optional<std::vector<double>> weights;

  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

namespace detail {

using nlohmann::json;

inline const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw sim::InvalidSpec(path, "must be an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw sim::InvalidSpec(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

inline std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline double number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number()) throw sim::InvalidSpec(join(path, key), "must be a number");
  return v.get<double>();
}

inline double number_or(const json& obj, const std::string& key, const std::string& path, double fallback) {
  return obj.contains(key) ? number(obj, key, path) : fallback;
}

inline std::string text(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) throw sim::InvalidSpec(join(path, key), "must be a string");
  return v.get<std::string>();
}

inline std::vector<double> numbers(const json& v, const std::string& path) {
  if (!v.is_array()) throw sim::InvalidSpec(path, "must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw sim::InvalidSpec(path + "[" + std::to_string(i) + "]", "must be a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

inline sim::BlockSpec parse_block(const json& b, const std::string& path) {
  const std::string kind = text(b, "kind", path);
  if (kind == "linear") return sim::LinearFirstOrder{number(b, "tau", path), number(b, "gamma", path)};
  if (kind == "ofp_cubic") return sim::NonlinearOfp{number(b, "gamma", path), number_or(b, "a", path, 0.0)};
  if (kind != "sector") throw sim::InvalidSpec(join(path, "kind"), "unknown block kind '" + kind + "'");

  const std::string shape = text(b, "shape", path);
  const double param = number(b, "param", path);
  sim::SectorShape s;
  if (shape == "softsat") {
    s = sim::ScaledSoftsat{};
  } else if (shape == "linear") {
    s = sim::LinearSector{};
  } else if (shape == "hill") {
    const double p = number_or(b, "p", path, 2.0);
    if (p != static_cast<double>(static_cast<int>(p))) throw sim::InvalidSpec(join(path, "p"), "must be an integer");
    s = sim::ShiftedHill{static_cast<int>(p), number_or(b, "offset", path, 1.0)};
  } else if (shape == "table") {
    const json& tab = require(b, "table", path);
    const std::string tpath = join(path, "table");
    if (!tab.is_array()) throw sim::InvalidSpec(tpath, "must be an array of [u, y] pairs");
    sim::UserTable t;
    for (std::size_t k = 0; k < tab.size(); ++k) {
      const auto pair = numbers(tab[k], tpath + "[" + std::to_string(k) + "]");
      if (pair.size() != 2) throw sim::InvalidSpec(tpath + "[" + std::to_string(k) + "]", "must be a [u, y] pair");
      t.u.push_back(pair[0]);
      t.y.push_back(pair[1]);
    }
    s = std::move(t);
  } else {
    throw sim::InvalidSpec(join(path, "shape"), "unknown sector shape '" + shape + "'");
  }
  try {
    return sim::StaticSector(param, std::move(s));
  } catch (const InvalidArgument& e) {
    throw sim::InvalidSpec(path, e.what());
  }
}

inline sim::InputSignal parse_input(const json& in) {
  const std::string path = "input";
  const std::string kind = text(in, "kind", path);
  if (kind == "zero") return sim::ZeroInput{};
  if (kind == "step") {
    return sim::StepInput{in.contains("h") ? number(in, "h", path) : number(in, "height", path)};
  }
  if (kind == "sin") return sim::SineInput{number(in, "amplitude", path), number(in, "frequency", path)};
  if (kind == "samples") {
    return sim::SampledInput{numbers(require(in, "t", path), "input.t"), numbers(require(in, "u", path), "input.u")};
  }
  throw sim::InvalidSpec("input.kind", "unknown input kind '" + kind + "'");
}

inline json block_to_json(const sim::BlockSpec& b) {
  if (const auto* lin = std::get_if<sim::LinearFirstOrder>(&b)) {
    return {{"kind", "linear"}, {"tau", lin->tau}, {"gamma", lin->gamma}};
  }
  if (const auto* ofp = std::get_if<sim::NonlinearOfp>(&b)) {
    return {{"kind", "ofp_cubic"}, {"a", ofp->a}, {"gamma", ofp->gamma}};
  }
  const auto& s = std::get<sim::StaticSector>(b);
  json j = {{"kind", "sector"}, {"param", s.gamma()}};
  if (std::holds_alternative<sim::ScaledSoftsat>(s.shape())) {
    j["shape"] = "softsat";
  } else if (std::holds_alternative<sim::LinearSector>(s.shape())) {
    j["shape"] = "linear";
  } else if (const auto* h = std::get_if<sim::ShiftedHill>(&s.shape())) {
    j["shape"] = "hill";
    j["p"] = h->p;
    j["offset"] = h->offset;
  } else {
    const auto& t = std::get<sim::UserTable>(s.shape());
    j["shape"] = "table";
    json tab = json::array();
    for (std::size_t k = 0; k < t.u.size(); ++k) tab.push_back({t.u[k], t.y[k]});
    j["table"] = std::move(tab);
  }
  return j;
}

inline json input_to_json(const sim::InputSignal& in) {
  if (std::holds_alternative<sim::ZeroInput>(in)) return {{"kind", "zero"}};
  if (const auto* s = std::get_if<sim::StepInput>(&in)) return {{"kind", "step"}, {"height", s->height}};
  if (const auto* s = std::get_if<sim::SineInput>(&in)) {
    return {{"kind", "sin"}, {"amplitude", s->amplitude}, {"frequency", s->frequency}};
  }
  const auto& s = std::get<sim::SampledInput>(in);
  return {{"kind", "samples"}, {"t", s.t}, {"u", s.u}};
}

}  // namespace detail

/// Parses and validates a config. Failures throw sim::InvalidSpec whose
/// field() names the offending path, e.g. "blocks[1].tau".
[[nodiscard]] inline SimulationConfig parse_config(const nlohmann::json& j) {
  using detail::require;
  if (!j.is_object()) throw sim::InvalidSpec("", "config must be a JSON object");
  SimulationConfig cfg;

  const std::string topo = detail::text(j, "topology", "");
  if (topo == "cyclic") {
    cfg.spec.topology = sim::Topology::cyclic;
  } else if (topo == "cascade") {
    cfg.spec.topology = sim::Topology::cascade;
  } else if (topo == "popov") {
    cfg.spec.topology = sim::Topology::popov;
  } else {
    throw sim::InvalidSpec("topology", "must be one of cyclic, cascade, popov");
  }

  const nlohmann::json& blocks = require(j, "blocks", "");
  if (!blocks.is_array()) throw sim::InvalidSpec("blocks", "must be an array");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    cfg.spec.blocks.push_back(detail::parse_block(blocks[i], "blocks[" + std::to_string(i) + "]"));
  }
  if (j.contains("input")) cfg.spec.input = detail::parse_input(j.at("input"));
  sim::validate(cfg.spec);

  cfg.x0 = detail::numbers(require(j, "x0", ""), "x0");
  const std::size_t n_dyn = sim::dynamic_indices(cfg.spec).size();
  if (cfg.x0.size() != n_dyn) {
    throw sim::InvalidSpec("x0", "expected " + std::to_string(n_dyn) + " entries, one per dynamic block");
  }
  cfg.dt = detail::number(j, "dt", "");
  if (!(cfg.dt > 0.0)) throw sim::InvalidSpec("dt", "must be positive");
  cfg.t_end = detail::number(j, "t_end", "");
  if (!(cfg.t_end > 0.0)) throw sim::InvalidSpec("t_end", "must be positive");
  if (j.contains("weights")) {
    cfg.weights = detail::numbers(j.at("weights"), "weights");
    if (cfg.weights->size() != n_dyn) throw sim::InvalidSpec("weights", "expected one weight per dynamic block");
    for (double w : *cfg.weights) {
      if (!(w > 0.0)) throw sim::InvalidSpec("weights", "must be positive");
    }
  }
  return cfg;
}

[[nodiscard]] inline nlohmann::json to_json(const SimulationConfig& cfg) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : cfg.spec.blocks) blocks.push_back(detail::block_to_json(b));
  nlohmann::json j = {{"topology", std::string(sim::to_string(cfg.spec.topology))},
                      {"blocks", std::move(blocks)},
                      {"x0", cfg.x0},
                      {"dt", cfg.dt},
                      {"t_end", cfg.t_end},
                      {"input", detail::input_to_json(cfg.spec.input)}};
  if (cfg.weights) j["weights"] = *cfg.weights;
  return j;
}

}  // namespace secant::cli
