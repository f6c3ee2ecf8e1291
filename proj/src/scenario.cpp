#include "oodsim/scenario.hpp"

#include <cmath>
#include <initializer_list>
#include <string_view>

#include <fmt/format.h>

#include "json.hpp"
#include "json_fields.hpp"
#include "oodsim/errors.hpp"

namespace oodsim::scenario {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(fmt::format("{}{}: unknown field", where.empty() ? "" : where + ".", key));
  }
}

ordered_json network_to_json(const pipe::PipeNetwork& n) {
  ordered_json j;
  j["pipe"]["inner_radius_mm"] = n.spec.inner_radius_mm;
  j["sections"] = ordered_json::array();
  for (const auto& s : n.sections) {
    ordered_json o;
    if (const auto* b = std::get_if<pipe::Bend>(&s)) {
      o["type"] = "bend";
      o["radius_mm"] = b->radius_mm;
      o["sweep_deg"] = b->sweep_deg;
      if (!b->plane_label.empty()) o["label"] = b->plane_label;
    } else {
      const auto& st = std::get<pipe::Straight>(s);
      o["type"] = "straight";
      o["length_mm"] = st.length_mm;
      if (!st.heading_label.empty()) o["label"] = st.heading_label;
    }
    j["sections"].push_back(o);
  }
  return j;
}

}  // namespace

pipe::PipeNetwork ScenarioConfig::resolved_network() const {
  return network ? *network : pipe::reference_network();
}

void ScenarioConfig::validate() const {
  resolved_network().validate();
  robot.validate();
  gear.validate();
  if (!std::isfinite(mu_deg)) throw ConfigError("mu_deg: not finite");
  if (!(std::isfinite(dt_ms) && dt_ms > 0.0)) throw ConfigError(fmt::format("dt_ms: must be > 0, got {}", dt_ms));
  if (!(std::isfinite(sample_ms) && sample_ms >= dt_ms)) {
    throw ConfigError(fmt::format("sample_ms: must be >= dt_ms, got {}", sample_ms));
  }
}

ScenarioConfig parse_scenario(const std::string& json_text) {
  using detail::optional_number;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config: invalid JSON ({})", e.what()));
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(j, {"network", "mu_deg", "robot", "gear", "dt_ms", "sample_ms", "out_dir"}, "");

  ScenarioConfig c;
  if (j.contains("network")) {
    const auto& n = j["network"];
    if (n.is_string()) {
      if (n.get<std::string>() != "paper") {
        throw ConfigError(fmt::format("network: unknown preset '{}'", n.get<std::string>()));
      }
    } else {
      c.network = pipe::network_from_json(n, "network");
    }
  }
  c.mu_deg = optional_number(j, "mu_deg", "config", c.mu_deg);
  c.dt_ms = optional_number(j, "dt_ms", "config", c.dt_ms);
  c.sample_ms = optional_number(j, "sample_ms", "config", c.sample_ms);
  if (j.contains("out_dir")) {
    if (!j["out_dir"].is_string()) throw ConfigError("out_dir: expected a string");
    c.out_dir = j["out_dir"].get<std::string>();
  }

  if (j.contains("robot")) {
    const auto& r = j["robot"];
    if (!r.is_object()) throw ConfigError("robot: expected an object");
    reject_unknown(r,
                   {"length_mm", "sprocket_diameter_mm", "input_rpm", "spring_preload_mm",
                    "bend_extra_compression_mm", "max_compression_mm", "module_length_mm"},
                   "robot");
    auto& rc = c.robot;
    rc.length_mm = optional_number(r, "length_mm", "robot", rc.length_mm);
    rc.sprocket_diameter_mm = optional_number(r, "sprocket_diameter_mm", "robot", rc.sprocket_diameter_mm);
    rc.input_rpm = optional_number(r, "input_rpm", "robot", rc.input_rpm);
    rc.spring_preload_mm = optional_number(r, "spring_preload_mm", "robot", rc.spring_preload_mm);
    rc.bend_extra_compression_mm = optional_number(r, "bend_extra_compression_mm", "robot", rc.bend_extra_compression_mm);
    rc.max_compression_mm = optional_number(r, "max_compression_mm", "robot", rc.max_compression_mm);
    // Module length follows the robot length unless given.
    rc.module_length_mm = optional_number(r, "module_length_mm", "robot", rc.length_mm);
  }

  if (j.contains("gear")) {
    const auto& g = j["gear"];
    if (!g.is_object()) throw ConfigError("gear: expected an object");
    reject_unknown(g, {"k", "j", "inertias"}, "gear");
    c.gear.k = optional_number(g, "k", "gear", c.gear.k);
    c.gear.j = optional_number(g, "j", "gear", c.gear.j);
    if (g.contains("inertias")) {
      const auto& in = g["inertias"];
      if (!in.is_array() || in.size() != 6) throw ConfigError("gear.inertias: expected an array of 6 numbers");
      for (std::size_t i = 0; i < 6; ++i) {
        if (!in[i].is_number()) throw ConfigError(fmt::format("gear.inertias[{}]: expected a number", i));
        c.gear.inertias[i] = in[i].get<double>();
      }
    }
  }
  return c;
}

std::string dump_scenario(const ScenarioConfig& c) {
  ordered_json j;
  if (c.network) {
    j["network"] = network_to_json(*c.network);
  } else {
    j["network"] = "paper";
  }
  j["mu_deg"] = c.mu_deg;
  auto& r = j["robot"];
  r["length_mm"] = c.robot.length_mm;
  r["sprocket_diameter_mm"] = c.robot.sprocket_diameter_mm;
  r["input_rpm"] = c.robot.input_rpm;
  r["spring_preload_mm"] = c.robot.spring_preload_mm;
  r["bend_extra_compression_mm"] = c.robot.bend_extra_compression_mm;
  r["max_compression_mm"] = c.robot.max_compression_mm;
  r["module_length_mm"] = c.robot.module_length_mm;
  auto& g = j["gear"];
  g["k"] = c.gear.k;
  g["j"] = c.gear.j;
  g["inertias"] = c.gear.inertias;
  j["dt_ms"] = c.dt_ms;
  j["sample_ms"] = c.sample_ms;
  if (c.out_dir) j["out_dir"] = *c.out_dir;
  return j.dump(2) + "\n";
}

}  // namespace oodsim::scenario
