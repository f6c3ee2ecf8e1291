#include <string>

#include <fmt/format.h>

#include "json.hpp"
#include "oodsim/errors.hpp"
#include "json_fields.hpp"
#include "oodsim/pipe_geometry.hpp"

namespace oodsim::pipe {

PipeNetwork network_from_json(const nlohmann::json& j, const std::string& where) {
  using detail::require_number;
  if (!j.is_object()) throw ConfigError(fmt::format("{}: expected an object", where));
  if (!j.contains("pipe") || !j["pipe"].is_object()) {
    throw ConfigError(fmt::format("{}.pipe: missing or not an object", where));
  }
  PipeNetwork n;
  n.spec.inner_radius_mm = require_number(j["pipe"], "inner_radius_mm", where + ".pipe");

  if (!j.contains("sections") || !j["sections"].is_array()) {
    throw ConfigError(fmt::format("{}.sections: missing or not an array", where));
  }
  const auto& secs = j["sections"];
  for (std::size_t i = 0; i < secs.size(); ++i) {
    const auto path = fmt::format("{}.sections[{}]", where, i);
    const auto& s = secs[i];
    if (!s.is_object() || !s.contains("type") || !s["type"].is_string()) {
      throw ConfigError(path + ".type: missing or not a string");
    }
    const std::string label = s.value("label", std::string{});
    const auto type = s["type"].get<std::string>();
    if (type == "straight") {
      n.sections.emplace_back(Straight{require_number(s, "length_mm", path), label});
    } else if (type == "bend") {
      n.sections.emplace_back(Bend{require_number(s, "radius_mm", path), require_number(s, "sweep_deg", path), label});
    } else {
      throw ConfigError(fmt::format("{}.type: unknown section type '{}'", path, type));
    }
  }
  return n;
}

PipeNetwork network_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("network: invalid JSON ({})", e.what()));
  }
  return network_from_json(j, "network");
}

std::string network_to_json_text(const PipeNetwork& network) {
  std::string out = "{\n";
  out += fmt::format("  \"pipe\": {{\"inner_radius_mm\": {:.2f}}},\n", network.spec.inner_radius_mm);
  out += "  \"sections\": [\n";
  for (std::size_t i = 0; i < network.sections.size(); ++i) {
    const auto& s = network.sections[i];
    if (const auto* b = std::get_if<Bend>(&s)) {
      out += fmt::format("    {{\"type\": \"bend\", \"radius_mm\": {:.2f}, \"sweep_deg\": {:.2f}}}", b->radius_mm,
                         b->sweep_deg);
    } else {
      out += fmt::format("    {{\"type\": \"straight\", \"length_mm\": {:.2f}}}", std::get<Straight>(s).length_mm);
    }
    out += (i + 1 < network.sections.size()) ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

}  // namespace oodsim::pipe
