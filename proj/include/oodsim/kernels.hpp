#pragma once

// Batch evaluation over many independent cases. Each kernel has a serial
// reference and an OpenMP version; both produce bit-identical results.

#include <array>
#include <span>
#include <vector>

#include "oodsim/geartrain.hpp"
#include "oodsim/pipe_geometry.hpp"
#include "oodsim/traversal.hpp"

namespace oodsim::kernels {

struct BendCase {
  double nominal_speed = 0.0;
  double bend_radius_mm = 0.0;
  double pipe_radius_mm = 0.0;
  double mu_deg = 0.0;
};

struct SplitCase {
  double input_rpm = 0.0;
  std::array<double, 3> ratios{1.0, 1.0, 1.0};
};

// Track speeds of three modules for each bend case. `out` must match `cases` in size.
// Throws GeometryError (before any work) if a case has R <= r.
void bend_speeds_serial(std::span<const BendCase> cases, std::span<std::array<double, 3>> out);
void bend_speeds_parallel(std::span<const BendCase> cases, std::span<std::array<double, 3>> out);

// Output speeds in rpm for each input/ratio case. Throws NonPositiveRatio before any work.
void split_speeds_serial(const geartrain::GearParams& params, std::span<const SplitCase> cases,
                         std::span<std::array<double, 3>> out_rpm);
void split_speeds_parallel(const geartrain::GearParams& params, std::span<const SplitCase> cases,
                           std::span<std::array<double, 3>> out_rpm);

// One full traversal per orientation.
std::vector<traversal::TraversalLog> run_orientations_serial(const std::vector<traversal::Traversal>& runs,
                                                             double dt_s, double sample_every_s);
std::vector<traversal::TraversalLog> run_orientations_parallel(const std::vector<traversal::Traversal>& runs,
                                                               double dt_s, double sample_every_s);

int max_threads();

}  // namespace oodsim::kernels
