#include "oodsim/traversal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "oodsim/errors.hpp"
#include "oodsim/units.hpp"

namespace oodsim::traversal {

void RobotConfig::validate() const {
  auto positive = [](double v, const char* field) {
    if (!(std::isfinite(v) && v > 0.0)) throw ConfigError(fmt::format("robot.{}: must be > 0, got {}", field, v));
  };
  positive(length_mm, "length_mm");
  positive(sprocket_diameter_mm, "sprocket_diameter_mm");
  positive(module_length_mm, "module_length_mm");
  positive(spring_preload_mm, "spring_preload_mm");
  if (!std::isfinite(input_rpm)) throw ConfigError("robot.input_rpm: not finite");
  if (!(std::isfinite(max_compression_mm) && max_compression_mm >= 0.0)) {
    throw ConfigError(fmt::format("robot.max_compression_mm: must be >= 0, got {}", max_compression_mm));
  }
  if (!(std::isfinite(bend_extra_compression_mm) && bend_extra_compression_mm >= 0.0)) {
    throw ConfigError(
        fmt::format("robot.bend_extra_compression_mm: must be >= 0, got {}", bend_extra_compression_mm));
  }
  if (spring_preload_mm > max_compression_mm) {
    throw ConfigError(fmt::format("robot.spring_preload_mm: {} exceeds max_compression_mm {}", spring_preload_mm,
                                  max_compression_mm));
  }
  if (spring_preload_mm + bend_extra_compression_mm > max_compression_mm) {
    throw ConfigError(fmt::format("robot.bend_extra_compression_mm: preload + extra ({}) exceeds max_compression_mm {}",
                                  spring_preload_mm + bend_extra_compression_mm, max_compression_mm));
  }
}

const char* to_string(TrackLaw law) {
  return law == TrackLaw::kDifferential ? "differential" : "equal_speed";
}

double nominal_speed(const RobotConfig& config, const geartrain::GearParams& params) {
  const auto out = geartrain::equal_load_output_speed(params, AngularSpeed::from_rpm(config.input_rpm));
  return rim_speed_mm_s(out, config.sprocket_diameter_mm);
}

std::array<double, 3> compression_profile(const TraversalState& state, const pipe::PipeNetwork& network,
                                          const RobotConfig& config) {
  double c = config.spring_preload_mm;
  if (state.section < network.sections.size() && pipe::is_bend(network.sections[state.section])) {
    c += config.bend_extra_compression_mm;
  }
  c = std::clamp(c, 0.0, config.max_compression_mm);
  return {c, c, c};
}

double asym_tilt_limit_deg(const RobotConfig& config) {
  if (!(config.module_length_mm > 0.0)) throw ConfigError("robot.module_length_mm: must be > 0");
  return rad_to_deg(std::atan(config.max_compression_mm / config.module_length_mm));
}

Traversal::Traversal(pipe::PipeNetwork network, pipe::Orientation orientation, RobotConfig config,
                     geartrain::GearParams params, TrackLaw law)
    : network_(std::move(network)),
      orientation_(orientation),
      config_(config),
      params_(params),
      law_(law) {
  network_.validate();
  config_.validate();
  params_.validate();
  if (!std::isfinite(orientation_.mu_deg)) throw ConfigError("mu_deg: not finite");

  nominal_ = nominal_speed(config_, params_);
  const double total = network_.total_length();
  path_start_ = config_.length_mm / 2.0;
  path_end_ = total - config_.length_mm / 2.0;
  if (path_end_ < path_start_) {
    throw ConfigError(fmt::format("robot.length_mm: robot ({} mm) is longer than the network ({} mm)",
                                  config_.length_mm, total));
  }

  const AngularSpeed input = AngularSpeed::from_rpm(config_.input_rpm);
  double end = 0.0;
  for (const auto& sec : network_.sections) {
    end += pipe::centerline_length(sec);
    section_end_.push_back(end);
    std::array<double, 3> v{nominal_, nominal_, nominal_};
    if (law_ == TrackLaw::kDifferential && pipe::is_bend(sec)) {
      const auto outs = geartrain::distribute_speeds(params_, input, pipe::speed_ratios(sec, orientation_, network_.spec));
      for (int i = 0; i < 3; ++i) v[i] = rim_speed_mm_s(outs[i], config_.sprocket_diameter_mm);
    }
    speeds_.push_back(v);
  }
}

TraversalState Traversal::decorate(TraversalState s) const {
  s.track_speed_mm_s = speeds_[s.section];
  s.compression_mm = compression_profile(s, network_, config_);
  return s;
}

TraversalState Traversal::initial_state() const {
  TraversalState s;
  s.s_mm = path_start_;
  const auto it = std::upper_bound(section_end_.begin(), section_end_.end(), path_start_);
  s.section = std::min<std::size_t>(static_cast<std::size_t>(it - section_end_.begin()), section_end_.size() - 1);
  s.done = path_end_ <= path_start_;
  return decorate(s);
}

TraversalState Traversal::step(const TraversalState& state, double dt_s) const {
  if (!(dt_s >= 0.0) || !std::isfinite(dt_s)) throw ConfigError(fmt::format("dt: must be >= 0, got {}", dt_s));
  TraversalState s = state;
  double remaining = dt_s;
  while (remaining > 0.0 && !s.done) {
    if (!(nominal_ > 0.0)) throw ConfigError("robot.input_rpm: traversal needs a positive input speed");
    const bool last_leg = section_end_[s.section] >= path_end_;
    const double boundary = last_leg ? path_end_ : section_end_[s.section];
    const double to_boundary = (boundary - s.s_mm) / nominal_;
    const auto& v = speeds_[s.section];
    if (to_boundary <= remaining) {
      for (int i = 0; i < 3; ++i) s.track_distance_mm[i] += v[i] * to_boundary;
      s.s_mm = boundary;
      s.time_s += to_boundary;
      remaining -= to_boundary;
      if (last_leg) {
        s.done = true;
      } else {
        ++s.section;
      }
    } else {
      for (int i = 0; i < 3; ++i) s.track_distance_mm[i] += v[i] * remaining;
      s.s_mm += nominal_ * remaining;
      s.time_s += remaining;
      remaining = 0.0;
    }
  }
  return decorate(s);
}

TraversalLog Traversal::run(double dt_s, double sample_every_s) const {
  if (!(std::isfinite(dt_s) && dt_s > 0.0)) throw ConfigError(fmt::format("dt_ms: must be > 0, got {}", dt_s * 1e3));
  if (!(std::isfinite(sample_every_s) && sample_every_s >= dt_s)) {
    throw ConfigError(fmt::format("sample_ms: must be >= dt_ms, got {}", sample_every_s * 1e3));
  }
  const auto every = std::max<long long>(1, std::llround(sample_every_s / dt_s));

  TraversalLog log;
  log.path_start_mm = path_start_;
  log.path_end_mm = path_end_;
  log.nominal_speed_mm_s = nominal_;
  log.mu_deg = orientation_.mu_deg;
  log.law = law_;

  TraversalState s = initial_state();
  log.rows.push_back(s);
  if (!s.done && !(nominal_ > 0.0)) throw ConfigError("robot.input_rpm: traversal needs a positive input speed");

  const double max_steps = s.done ? 0.0 : std::ceil((path_end_ - path_start_) / (nominal_ * dt_s)) + 16.0;
  for (long long n = 1; !s.done; ++n) {
    if (static_cast<double>(n) > max_steps) throw Error("traversal did not terminate");
    s = step(s, dt_s);
    if ((n % every == 0 || s.done) && s.time_s > log.rows.back().time_s) log.rows.push_back(s);
  }
  log.complete = true;
  return log;
}

std::array<double, 3> geometric_track_distance(const pipe::PipeNetwork& network, const pipe::Orientation& orientation,
                                               double from_mm, double to_mm) {
  std::array<double, 3> d{};
  double start = 0.0;
  for (const auto& sec : network.sections) {
    const double len = pipe::centerline_length(sec);
    const double lo = std::max(start, from_mm);
    const double hi = std::min(start + len, to_mm);
    if (hi > lo) {
      const double fraction = (hi - lo) / len;
      for (std::size_t i = 0; i < 3; ++i) {
        d[i] += fraction * pipe::track_path_length(sec, orientation, network.spec, i);
      }
    }
    start += len;
  }
  return d;
}

std::array<double, 3> SlipReport::magnitude_mm() const {
  return {std::abs(signed_mm[0]), std::abs(signed_mm[1]), std::abs(signed_mm[2])};
}

SlipReport slip_metric(const TraversalLog& log, const pipe::PipeNetwork& network,
                       const pipe::Orientation& orientation) {
  if (!log.complete || log.rows.empty() || !log.final_state().done) {
    throw IncompleteLog("traversal log does not reach the end of the path");
  }
  SlipReport r;
  r.travelled_mm = log.final_state().track_distance_mm;
  r.required_mm = geometric_track_distance(network, orientation, log.path_start_mm, log.path_end_mm);
  for (int i = 0; i < 3; ++i) r.signed_mm[i] = r.travelled_mm[i] - r.required_mm[i];
  return r;
}

}  // namespace oodsim::traversal
