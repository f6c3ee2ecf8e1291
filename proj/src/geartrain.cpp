#include "oodsim/geartrain.hpp"

#include <cmath>

#include <fmt/format.h>

#include "oodsim/errors.hpp"

namespace oodsim::geartrain {
namespace {

// Zero-based side gear indices (S1 -> 0).
constexpr std::array<std::array<int, 2>, 3> kTwoOutputSides{{{0, 1}, {2, 3}, {4, 5}}};
constexpr std::array<std::array<int, 2>, 3> kTwoInputSides{{{6, 7}, {8, 9}, {10, 11}}};
constexpr std::array<std::array<int, 2>, 6> kMeshes{{{0, 6}, {2, 7}, {4, 10}, {1, 11}, {3, 8}, {5, 9}}};

}  // namespace

void GearParams::validate() const {
  if (!(std::isfinite(k) && k > 0.0)) throw ConfigError(fmt::format("gear.k: must be > 0, got {}", k));
  if (!(std::isfinite(j) && j > 0.0)) throw ConfigError(fmt::format("gear.j: must be > 0, got {}", j));
  for (std::size_t i = 0; i < inertias.size(); ++i) {
    if (!(std::isfinite(inertias[i]) && inertias[i] >= 0.0)) {
      throw ConfigError(fmt::format("gear.inertias[{}]: must be >= 0, got {}", i, inertias[i]));
    }
  }
}

AngularSpeed ring_speed(const GearParams& params, AngularSpeed input) { return input / params.k; }

AngularSpeed equal_load_output_speed(const GearParams& params, AngularSpeed input) {
  return params.j * input / params.k;
}

TorqueBreakdown output_torques(const GearParams& params, const LoadCase& load) {
  const auto& I = params.inertias;
  const auto& a = load.side_accels;  // a[0] is S7
  TorqueBreakdown out;
  // Pairings as derived for each output; the third is not index-symmetric with the first two.
  out.inertial_terms[0] = (I[0] * a[0] + I[2] * a[1]) / params.j;
  out.inertial_terms[1] = (I[3] * a[2] + I[5] * a[3]) / params.j;
  out.inertial_terms[2] = (I[1] * a[5] + I[4] * a[4]) / params.j;
  const double share = params.k * load.input_torque_nmm / (3.0 * params.j);
  for (int i = 0; i < 3; ++i) out.outputs[i] = share - out.inertial_terms[i];
  return out;
}

AngularSpeed two_output_residual(AngularSpeed ring, AngularSpeed side_a, AngularSpeed side_b,
                                 double k_local) {
  return ring - k_local * (side_a + side_b) / 2.0;
}

std::array<AngularSpeed, 3> distribute_speeds(const GearParams& params, AngularSpeed input,
                                              const std::array<double, 3>& demand_ratios) {
  double total = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double r = demand_ratios[i];
    if (!(std::isfinite(r) && r > 0.0)) {
      throw NonPositiveRatio(fmt::format("demand ratio {} must be > 0, got {}", i, r));
    }
    total += r;
  }
  const AngularSpeed nominal = equal_load_output_speed(params, input);
  std::array<AngularSpeed, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    // Equal ratios must give bit-identical outputs, so the ratio is normalised first.
    out[i] = nominal * (3.0 * demand_ratios[i] / total);
  }
  return out;
}

OODState reconstruct_state(const GearParams& params, AngularSpeed input,
                           const std::array<AngularSpeed, 3>& outputs) {
  OODState s;
  s.input = input;
  s.outputs = outputs;

  const double rho = ring_speed(params, input).rad_per_sec();
  for (int i = 0; i < 3; ++i) {
    s.rings[i] = AngularSpeed::from_rad_per_sec(rho);
    s.rings[3 + i] = outputs[i] / params.j;
  }

  // Deviations of the 2-ID rings from the 2-OD ring speed; they sum to zero.
  const double e1 = s.rings[3].rad_per_sec() - rho;
  const double e3 = s.rings[5].rad_per_sec() - rho;

  // Side deviations from rho, free parameter y chosen to minimise their squared sum.
  const double y = 2.0 * (e1 - e3) / 3.0;
  std::array<double, 6> dev{};
  dev[0] = y;               // S1
  dev[1] = -y;              // S2
  dev[2] = 2.0 * e1 - y;    // S3
  dev[3] = -dev[2];         // S4
  dev[4] = 2.0 * e3 + y;    // S5
  dev[5] = -dev[4];         // S6

  for (int i = 0; i < 6; ++i) s.sides[i] = AngularSpeed::from_rad_per_sec(rho + dev[i]);
  for (const auto& m : kMeshes) s.sides[m[1]] = s.sides[m[0]];
  return s;
}

std::vector<NamedResidual> verify_state(const GearParams& params, const OODState& state) {
  std::vector<NamedResidual> res;
  res.reserve(18);
  const AngularSpeed rho = ring_speed(params, state.input);
  for (int i = 0; i < 3; ++i) {
    res.push_back({fmt::format("R{} input", i + 1), (state.rings[i] - rho).rpm()});
  }
  for (int i = 0; i < 3; ++i) {
    const auto& p = kTwoOutputSides[i];
    res.push_back({fmt::format("2-OD{} mean", i + 1),
                   two_output_residual(state.rings[i], state.sides[p[0]], state.sides[p[1]], 1.0).rpm()});
  }
  for (const auto& m : kMeshes) {
    res.push_back({fmt::format("S{}=S{}", m[0] + 1, m[1] + 1), (state.sides[m[0]] - state.sides[m[1]]).rpm()});
  }
  for (int i = 0; i < 3; ++i) {
    const auto& p = kTwoInputSides[i];
    res.push_back({fmt::format("2-ID{} mean", i + 1),
                   two_output_residual(state.rings[3 + i], state.sides[p[0]], state.sides[p[1]], 1.0).rpm()});
  }
  for (int i = 0; i < 3; ++i) {
    res.push_back({fmt::format("O{} ring", i + 1), (state.outputs[i] - params.j * state.rings[3 + i]).rpm()});
  }
  return res;
}

}  // namespace oodsim::geartrain
