#include "oodsim/pipe_geometry.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "oodsim/errors.hpp"
#include "oodsim/units.hpp"

namespace oodsim::pipe {

double centerline_length(const Section& section) {
  if (const auto* b = std::get_if<Bend>(&section)) return b->radius_mm * deg_to_rad(b->sweep_deg);
  return std::get<Straight>(section).length_mm;
}

void PipeNetwork::validate() const {
  if (!(std::isfinite(spec.inner_radius_mm) && spec.inner_radius_mm > 0.0)) {
    throw ConfigError(fmt::format("pipe.inner_radius_mm: must be > 0, got {}", spec.inner_radius_mm));
  }
  if (sections.empty()) throw ConfigError("sections: network must contain at least one section");
  for (std::size_t i = 0; i < sections.size(); ++i) {
    if (const auto* b = std::get_if<Bend>(&sections[i])) {
      if (!std::isfinite(b->radius_mm) || b->radius_mm <= spec.inner_radius_mm) {
        throw GeometryError(fmt::format("sections[{}].radius_mm: bend radius must exceed pipe radius ({} <= {})",
                                        i, b->radius_mm, spec.inner_radius_mm));
      }
      if (!(std::isfinite(b->sweep_deg) && b->sweep_deg > 0.0 && b->sweep_deg <= 360.0)) {
        throw ConfigError(fmt::format("sections[{}].sweep_deg: must be in (0, 360], got {}", i, b->sweep_deg));
      }
    } else {
      const double len = std::get<Straight>(sections[i]).length_mm;
      if (!(std::isfinite(len) && len > 0.0)) {
        throw ConfigError(fmt::format("sections[{}].length_mm: must be > 0, got {}", i, len));
      }
    }
  }
}

double PipeNetwork::total_length() const {
  double total = 0.0;
  for (const auto& s : sections) total += centerline_length(s);
  return total;
}

double PipeNetwork::section_start(std::size_t index) const {
  double start = 0.0;
  for (std::size_t i = 0; i < index && i < sections.size(); ++i) start += centerline_length(sections[i]);
  return start;
}

double bend_track_speed(double nominal_speed, double bend_radius_mm, double pipe_radius_mm,
                        double track_angle_deg) {
  if (!(pipe_radius_mm > 0.0) || !(bend_radius_mm > pipe_radius_mm)) {
    throw GeometryError(fmt::format("bend radius must exceed pipe radius ({} <= {})", bend_radius_mm,
                                    pipe_radius_mm));
  }
  return nominal_speed * (bend_radius_mm - pipe_radius_mm * std::cos(deg_to_rad(track_angle_deg))) /
         bend_radius_mm;
}

std::array<double, 3> speed_ratios(const Section& section, const Orientation& orientation,
                                   const PipeSpec& spec) {
  return track_speeds(1.0, section, orientation, spec);
}

std::array<double, 3> track_speeds(double nominal_speed, const Section& section,
                                   const Orientation& orientation, const PipeSpec& spec) {
  const auto* b = std::get_if<Bend>(&section);
  if (b == nullptr) return {nominal_speed, nominal_speed, nominal_speed};
  std::array<double, 3> v{};
  for (std::size_t i = 0; i < 3; ++i) {
    v[i] = bend_track_speed(nominal_speed, b->radius_mm, spec.inner_radius_mm, orientation.track_angle_deg(i));
  }
  return v;
}

double track_path_length(const Section& section, const Orientation& orientation, const PipeSpec& spec,
                         std::size_t track_index) {
  const auto* b = std::get_if<Bend>(&section);
  if (b == nullptr) return std::get<Straight>(section).length_mm;
  // Arc of the circle the track rides on: R - r cos(angle) from the bend axis.
  const double track_radius =
      bend_track_speed(b->radius_mm, b->radius_mm, spec.inner_radius_mm, orientation.track_angle_deg(track_index));
  return deg_to_rad(b->sweep_deg) * track_radius;
}

double ReferenceGeometry::bend_radius_mm() { return kElbowCenterlineMm / (std::numbers::pi / 2.0); }

PipeNetwork reference_network() {
  const double R = ReferenceGeometry::bend_radius_mm();
  PipeNetwork n;
  n.spec.inner_radius_mm = ReferenceGeometry::kPipeRadiusMm;
  n.sections = {
      Straight{550.0, "vertical"},
      Bend{R, 90.0, "elbow"},
      Straight{350.0, "horizontal"},
      Bend{R, 180.0, "u-bend"},
      Straight{150.0, "horizontal"},
  };
  return n;
}

}  // namespace oodsim::pipe
