#pragma once

// Field accessors shared by the JSON readers. Errors name the full field path.

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "json.hpp"
#include "oodsim/errors.hpp"
#include "oodsim/pipe_geometry.hpp"

namespace oodsim::detail {

inline double require_number(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(fmt::format("{}.{}: missing", where, key));
  const auto& v = obj[key];
  if (!v.is_number()) throw ConfigError(fmt::format("{}.{}: expected a number", where, key));
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(fmt::format("{}.{}: not finite", where, key));
  return d;
}

inline double optional_number(const nlohmann::json& obj, const char* key, const std::string& where,
                              double fallback) {
  return obj.contains(key) ? require_number(obj, key, where) : fallback;
}

}  // namespace oodsim::detail

namespace oodsim::pipe {

PipeNetwork network_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace oodsim::pipe
