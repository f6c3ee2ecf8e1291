#pragma once

// Quasi-static traversal of a pipe network.
//
// The robot center follows the centerline at the sprocket rim speed of the
// equal-load output. Inside each section every track runs at the speed the
// differential hands it for that section's geometry; speeds change only at
// section boundaries, where a step is split exactly.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "oodsim/geartrain.hpp"
#include "oodsim/pipe_geometry.hpp"

namespace oodsim::traversal {

struct RobotConfig {
  double length_mm = 200.0;
  double sprocket_diameter_mm = 80.0;
  double input_rpm = 120.0;
  double spring_preload_mm = 1.25;
  double bend_extra_compression_mm = 1.5;
  double max_compression_mm = 16.0;
  double module_length_mm = 200.0;

  void validate() const;
};

/// How track speeds are assigned inside a bend.
enum class TrackLaw {
  kDifferential,  // geometry-driven split through the three-output differential
  kEqualSpeed,    // all tracks locked to the centerline speed (no differential)
};

const char* to_string(TrackLaw law);

struct TraversalState {
  double time_s = 0.0;
  double s_mm = 0.0;  // robot center, arc position along the centerline
  std::size_t section = 0;
  std::array<double, 3> track_distance_mm{};
  std::array<double, 3> track_speed_mm_s{};
  std::array<double, 3> compression_mm{};
  bool done = false;
};

struct TraversalLog {
  std::vector<TraversalState> rows;
  double path_start_mm = 0.0;
  double path_end_mm = 0.0;
  double nominal_speed_mm_s = 0.0;
  double mu_deg = 0.0;
  TrackLaw law = TrackLaw::kDifferential;
  bool complete = false;

  const TraversalState& final_state() const { return rows.back(); }
  double total_time_s() const { return rows.empty() ? 0.0 : rows.back().time_s; }
  double effective_path_mm() const { return path_end_mm - path_start_mm; }
};

/// Rim speed of a sprocket at the equal-load output speed, mm/s.
double nominal_speed(const RobotConfig& config, const geartrain::GearParams& params);

/// Straights hold the spring preload; bends add the extra deflection. Clamped to [0, max].
std::array<double, 3> compression_profile(const TraversalState& state, const pipe::PipeNetwork& network,
                                          const RobotConfig& config);

/// Largest tilt of a module with its front end fully compressed and its rear fully extended.
double asym_tilt_limit_deg(const RobotConfig& config);

class Traversal {
 public:
  /// Validates all inputs. Throws GeometryError or ConfigError.
  Traversal(pipe::PipeNetwork network, pipe::Orientation orientation, RobotConfig config,
            geartrain::GearParams params, TrackLaw law = TrackLaw::kDifferential);

  TraversalState initial_state() const;

  /// Advances by `dt_s`. Stops at the end of the path and flags the state done;
  /// the returned time then covers only the distance actually travelled.
  TraversalState step(const TraversalState& state, double dt_s) const;

  /// Steps from the initial state to the end of the path, recording every
  /// `sample_every_s` plus the initial and final states.
  TraversalLog run(double dt_s, double sample_every_s) const;

  double path_start_mm() const { return path_start_; }
  double path_end_mm() const { return path_end_; }
  double nominal_speed_mm_s() const { return nominal_; }
  const std::array<double, 3>& section_track_speeds(std::size_t section) const { return speeds_[section]; }
  const pipe::PipeNetwork& network() const { return network_; }
  const pipe::Orientation& orientation() const { return orientation_; }
  const RobotConfig& config() const { return config_; }

 private:
  TraversalState decorate(TraversalState s) const;

  pipe::PipeNetwork network_;
  pipe::Orientation orientation_;
  RobotConfig config_;
  geartrain::GearParams params_;
  TrackLaw law_;
  double nominal_ = 0.0;
  double path_start_ = 0.0;
  double path_end_ = 0.0;
  std::vector<double> section_end_;
  std::vector<std::array<double, 3>> speeds_;
};

/// Track distance each track must cover between two centerline positions to roll without slip.
std::array<double, 3> geometric_track_distance(const pipe::PipeNetwork& network, const pipe::Orientation& orientation,
                                               double from_mm, double to_mm);

struct SlipReport {
  std::array<double, 3> travelled_mm{};
  std::array<double, 3> required_mm{};
  std::array<double, 3> signed_mm{};  // travelled - required; positive is drag, negative is slip

  std::array<double, 3> magnitude_mm() const;
};

/// Throws IncompleteLog if the run did not reach the end of the path.
SlipReport slip_metric(const TraversalLog& log, const pipe::PipeNetwork& network,
                       const pipe::Orientation& orientation);

// Time series CSV: header
//   t_s,s_mm,section,v_tA_mms,v_tB_mms,v_tC_mms,d_A_mm,d_B_mm,d_C_mm,comp_A_mm,comp_B_mm,comp_C_mm
// then one row per sample with 6-decimal fields (section is an integer index).

inline constexpr const char* kCsvHeader =
    "t_s,s_mm,section,v_tA_mms,v_tB_mms,v_tC_mms,d_A_mm,d_B_mm,d_C_mm,comp_A_mm,comp_B_mm,comp_C_mm";

void write_csv(const TraversalLog& log, std::ostream& out);

/// Parses rows written by write_csv. Throws ConfigError on a malformed file.
std::vector<TraversalState> read_csv(std::istream& in);

/// Run summary as pretty-printed JSON.
std::string summary_json(const TraversalLog& log, const Traversal& traversal);

}  // namespace oodsim::traversal
