#include "oodsim/kernels.hpp"

#include <cmath>
#include <cstddef>
#include <exception>

#include <fmt/format.h>
#include <omp.h>

#include "oodsim/errors.hpp"
#include "oodsim/units.hpp"

namespace oodsim::kernels {
namespace {

void check_sizes(std::size_t in, std::size_t out) {
  if (in != out) throw ConfigError(fmt::format("kernel output size {} does not match {} cases", out, in));
}

void check_bends(std::span<const BendCase> cases) {
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    if (!(c.pipe_radius_mm > 0.0) || !(c.bend_radius_mm > c.pipe_radius_mm)) {
      throw GeometryError(fmt::format("case {}: bend radius must exceed pipe radius", i));
    }
  }
}

void check_splits(std::span<const SplitCase> cases) {
  for (std::size_t i = 0; i < cases.size(); ++i) {
    for (double r : cases[i].ratios) {
      if (!(std::isfinite(r) && r > 0.0)) throw NonPositiveRatio(fmt::format("case {}: ratio {} must be > 0", i, r));
    }
  }
}

inline std::array<double, 3> bend_speeds_one(const BendCase& c) {
  std::array<double, 3> v{};
  for (int t = 0; t < 3; ++t) {
    v[t] = pipe::bend_track_speed(c.nominal_speed, c.bend_radius_mm, c.pipe_radius_mm, c.mu_deg + 120.0 * t);
  }
  return v;
}

inline std::array<double, 3> split_one(const geartrain::GearParams& params, const SplitCase& c) {
  const auto w = geartrain::distribute_speeds(params, AngularSpeed::from_rpm(c.input_rpm), c.ratios);
  return {w[0].rpm(), w[1].rpm(), w[2].rpm()};
}

}  // namespace

void bend_speeds_serial(std::span<const BendCase> cases, std::span<std::array<double, 3>> out) {
  check_sizes(cases.size(), out.size());
  check_bends(cases);
  for (std::size_t i = 0; i < cases.size(); ++i) out[i] = bend_speeds_one(cases[i]);
}

void bend_speeds_parallel(std::span<const BendCase> cases, std::span<std::array<double, 3>> out) {
  check_sizes(cases.size(), out.size());
  check_bends(cases);
  const auto n = static_cast<std::ptrdiff_t>(cases.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = bend_speeds_one(cases[i]);
}

void split_speeds_serial(const geartrain::GearParams& params, std::span<const SplitCase> cases,
                         std::span<std::array<double, 3>> out_rpm) {
  check_sizes(cases.size(), out_rpm.size());
  params.validate();
  check_splits(cases);
  for (std::size_t i = 0; i < cases.size(); ++i) out_rpm[i] = split_one(params, cases[i]);
}

void split_speeds_parallel(const geartrain::GearParams& params, std::span<const SplitCase> cases,
                           std::span<std::array<double, 3>> out_rpm) {
  check_sizes(cases.size(), out_rpm.size());
  params.validate();
  check_splits(cases);
  const auto n = static_cast<std::ptrdiff_t>(cases.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out_rpm[i] = split_one(params, cases[i]);
}

std::vector<traversal::TraversalLog> run_orientations_serial(const std::vector<traversal::Traversal>& runs,
                                                             double dt_s, double sample_every_s) {
  std::vector<traversal::TraversalLog> logs;
  logs.reserve(runs.size());
  for (const auto& r : runs) logs.push_back(r.run(dt_s, sample_every_s));
  return logs;
}

std::vector<traversal::TraversalLog> run_orientations_parallel(const std::vector<traversal::Traversal>& runs,
                                                               double dt_s, double sample_every_s) {
  std::vector<traversal::TraversalLog> logs(runs.size());
  std::vector<std::exception_ptr> errors(runs.size());
  const auto n = static_cast<std::ptrdiff_t>(runs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      logs[i] = runs[i].run(dt_s, sample_every_s);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return logs;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace oodsim::kernels
