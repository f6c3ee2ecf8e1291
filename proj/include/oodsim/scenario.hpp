#pragma once

// Scenario file for the simulator. JSON with units spelled out in field names:
//
//   {
//     "network": "paper" | {<network descriptor>},
//     "mu_deg": 0,
//     "robot": {"length_mm": 200, "sprocket_diameter_mm": 80, "input_rpm": 120,
//               "spring_preload_mm": 1.25, "bend_extra_compression_mm": 1.5,
//               "max_compression_mm": 16, "module_length_mm": 200},
//     "gear": {"k": 20, "j": 2, "inertias": [0, 0, 0, 0, 0, 0]},
//     "dt_ms": 1,
//     "sample_ms": 100,
//     "out_dir": "runs/mu0"          (optional)
//   }
//
// Every block and field is optional; missing values take the defaults above.
// Unknown fields are rejected.

#include <optional>
#include <string>

#include "oodsim/geartrain.hpp"
#include "oodsim/pipe_geometry.hpp"
#include "oodsim/traversal.hpp"

namespace oodsim::scenario {

struct ScenarioConfig {
  std::optional<pipe::PipeNetwork> network;  // empty selects the reference preset
  double mu_deg = 0.0;
  traversal::RobotConfig robot;
  geartrain::GearParams gear;
  double dt_ms = 1.0;
  double sample_ms = 100.0;
  std::optional<std::string> out_dir;

  pipe::PipeNetwork resolved_network() const;

  /// Throws GeometryError for impossible bends and ConfigError for anything else.
  void validate() const;
};

/// Throws ConfigError naming the offending field.
ScenarioConfig parse_scenario(const std::string& json_text);

/// Emits every field. parse_scenario(dump_scenario(c)) dumps to the same bytes.
std::string dump_scenario(const ScenarioConfig& config);

}  // namespace oodsim::scenario
