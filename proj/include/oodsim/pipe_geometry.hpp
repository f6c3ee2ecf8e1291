#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace oodsim::pipe {

struct PipeSpec {
  double inner_radius_mm = 0.0;
};

struct Straight {
  double length_mm = 0.0;
  std::string heading_label;
};

struct Bend {
  double radius_mm = 0.0;  // centerline radius of curvature
  double sweep_deg = 0.0;
  std::string plane_label;
};

using Section = std::variant<Straight, Bend>;

inline bool is_bend(const Section& s) { return std::holds_alternative<Bend>(s); }

double centerline_length(const Section& section);

struct PipeNetwork {
  PipeSpec spec;
  std::vector<Section> sections;

  /// Throws GeometryError for bends with radius <= bore radius, ConfigError otherwise.
  void validate() const;
  double total_length() const;
  /// Centerline arc position where section `index` starts.
  double section_start(std::size_t index) const;
};

/// Insertion roll of module A relative to the bend plane. Modules B and C sit at +120 and +240.
struct Orientation {
  double mu_deg = 0.0;

  double track_angle_deg(std::size_t track) const { return mu_deg + 120.0 * static_cast<double>(track); }
};

inline constexpr std::array<char, 3> kTrackNames{'A', 'B', 'C'};

/// Speed of a track riding at `track_angle_deg` around the bore of a bend:
/// v * (R - r cos(angle)) / R.
double bend_track_speed(double nominal_speed, double bend_radius_mm, double pipe_radius_mm,
                        double track_angle_deg);

/// Per-track speed as a fraction of the centerline speed (1 in straights).
std::array<double, 3> speed_ratios(const Section& section, const Orientation& orientation,
                                   const PipeSpec& spec);

std::array<double, 3> track_speeds(double nominal_speed, const Section& section,
                                   const Orientation& orientation, const PipeSpec& spec);

double track_path_length(const Section& section, const Orientation& orientation, const PipeSpec& spec,
                         std::size_t track_index);

/// Planar test network: vertical run, 90 degree elbow, horizontal run, 180 degree return
/// bend, short horizontal run. Both bends share one radius.
PipeNetwork reference_network();

/// Values the reference network is built from.
struct ReferenceGeometry {
  static constexpr double kElbowCenterlineMm = 657.83;
  static constexpr double kPipeRadiusMm = 137.95;
  static constexpr double kTotalCenterlineMm = 3023.49;
  static double bend_radius_mm();
};

// Network descriptor JSON:
//   {"pipe": {"inner_radius_mm": r}, "sections": [{"type": "straight", "length_mm": L},
//    {"type": "bend", "radius_mm": R, "sweep_deg": a}]}
// Emission uses a fixed field order and two decimals, so output is stable byte for byte.

PipeNetwork network_from_json_text(const std::string& text);
std::string network_to_json_text(const PipeNetwork& network);

}  // namespace oodsim::pipe
