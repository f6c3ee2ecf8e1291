#pragma once

#include <cmath>
#include <numbers>

namespace oodsim {

inline constexpr double kRpmToRadPerSec = 2.0 * std::numbers::pi / 60.0;
inline constexpr double kDegToRad = std::numbers::pi / 180.0;

constexpr double deg_to_rad(double deg) { return deg * kDegToRad; }
constexpr double rad_to_deg(double rad) { return rad / kDegToRad; }

/// Shaft angular speed. Stored in rad/s; constructed from and reported in rpm at API edges.
class AngularSpeed {
 public:
  constexpr AngularSpeed() = default;

  static constexpr AngularSpeed from_rpm(double rpm) { return AngularSpeed(rpm * kRpmToRadPerSec); }
  static constexpr AngularSpeed from_rad_per_sec(double w) { return AngularSpeed(w); }

  constexpr double rpm() const { return rad_s_ / kRpmToRadPerSec; }
  constexpr double rad_per_sec() const { return rad_s_; }

  constexpr AngularSpeed operator+(AngularSpeed o) const { return AngularSpeed(rad_s_ + o.rad_s_); }
  constexpr AngularSpeed operator-(AngularSpeed o) const { return AngularSpeed(rad_s_ - o.rad_s_); }
  constexpr AngularSpeed operator*(double c) const { return AngularSpeed(rad_s_ * c); }
  constexpr AngularSpeed operator/(double c) const { return AngularSpeed(rad_s_ / c); }
  friend constexpr AngularSpeed operator*(double c, AngularSpeed w) { return w * c; }

  constexpr bool operator==(const AngularSpeed&) const = default;

 private:
  explicit constexpr AngularSpeed(double rad_s) : rad_s_(rad_s) {}
  double rad_s_ = 0.0;
};

/// Linear speed of a point on a sprocket rim, mm/s.
inline double rim_speed_mm_s(AngularSpeed w, double sprocket_diameter_mm) {
  return w.rad_per_sec() * sprocket_diameter_mm / 2.0;
}

}  // namespace oodsim
