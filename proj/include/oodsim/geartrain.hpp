#pragma once

// Closed-form kinematics and torque split of the three-output open differential.
//
// Layout: the input U drives three two-output differentials (2-OD1..3, rings R1..R3,
// side gears S1..S6). Their side gears mesh rigidly with the side gears of three
// two-input differentials (2-ID1..3, rings R4..R6, side gears S7..S12), whose rings
// drive the outputs O1..O3.
//
//   2-OD1: S1, S2    2-OD2: S3, S4    2-OD3: S5, S6
//   2-ID1: S7, S8    2-ID2: S9, S10   2-ID3: S11, S12
//   meshes: S1-S7, S3-S8, S5-S11, S2-S12, S4-S9, S6-S10
//
// Ring speed of 2-OD is input/k, each ring turns at the mean of its side gears,
// and output i turns at j times the ring speed of 2-ID i.

#include <array>
#include <string>
#include <vector>

#include "oodsim/units.hpp"

namespace oodsim::geartrain {

struct GearParams {
  double k = 20.0;  // input-to-ring reduction: ring = input / k
  double j = 2.0;   // 2-ID ring to output step-up: output = j * ring
  std::array<double, 6> inertias{};  // side gears I1..I6

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Instantaneous shaft speeds of every element. Index 0 holds element 1.
struct OODState {
  AngularSpeed input;
  std::array<AngularSpeed, 6> rings{};
  std::array<AngularSpeed, 12> sides{};
  std::array<AngularSpeed, 3> outputs{};
};

struct LoadCase {
  double input_torque_nmm = 0.0;
  std::array<double, 6> side_accels{};  // angular accelerations of S7..S12, rad/s^2
};

struct TorqueBreakdown {
  std::array<double, 3> outputs{};         // N*mm
  std::array<double, 3> inertial_terms{};  // subtracted from k*tau_u/(3j)
};

struct NamedResidual {
  std::string name;
  double rpm = 0.0;
};

AngularSpeed ring_speed(const GearParams& params, AngularSpeed input);

/// Output speed when all three outputs carry the same load: j * input / k.
AngularSpeed equal_load_output_speed(const GearParams& params, AngularSpeed input);

TorqueBreakdown output_torques(const GearParams& params, const LoadCase& load);

/// Violation of one two-output differential: ring - k_local * (a + b) / 2.
AngularSpeed two_output_residual(AngularSpeed ring, AngularSpeed side_a, AngularSpeed side_b,
                                 double k_local);

/// Splits the output speed budget 3*j*input/k in proportion to `demand_ratios`.
/// Throws NonPositiveRatio if any ratio is not strictly positive.
std::array<AngularSpeed, 3> distribute_speeds(const GearParams& params, AngularSpeed input,
                                              const std::array<double, 3>& demand_ratios);

/// Builds a full state from output speeds that satisfy the sum invariant.
///
/// The side-gear network has one internal degree of freedom left once the outputs
/// are fixed; the minimum-norm choice (side speeds closest to the ring speed) is used.
OODState reconstruct_state(const GearParams& params, AngularSpeed input,
                           const std::array<AngularSpeed, 3>& outputs);

/// One residual per constraint, in rpm. All zero iff the state is consistent.
std::vector<NamedResidual> verify_state(const GearParams& params, const OODState& state);

}  // namespace oodsim::geartrain
