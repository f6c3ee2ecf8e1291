#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "oodsim/kernels.hpp"
#include "oodsim/traversal.hpp"

namespace {

std::vector<oodsim::kernels::BendCase> make_bend_cases(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mu(0.0, 360.0), r(10.0, 300.0), extra(1.0, 1000.0), v(0.0, 200.0);
  std::vector<oodsim::kernels::BendCase> cases(n);
  for (auto& c : cases) {
    c.pipe_radius_mm = r(rng);
    c.bend_radius_mm = c.pipe_radius_mm + extra(rng);
    c.mu_deg = mu(rng);
    c.nominal_speed = v(rng);
  }
  return cases;
}

void BM_BendSpeedsSerial(benchmark::State& state) {
  const auto cases = make_bend_cases(static_cast<std::size_t>(state.range(0)));
  std::vector<std::array<double, 3>> out(cases.size());
  for (auto _ : state) {
    oodsim::kernels::bend_speeds_serial(cases, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BendSpeedsParallel(benchmark::State& state) {
  const auto cases = make_bend_cases(static_cast<std::size_t>(state.range(0)));
  std::vector<std::array<double, 3>> out(cases.size());
  for (auto _ : state) {
    oodsim::kernels::bend_speeds_parallel(cases, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<oodsim::kernels::SplitCase> make_split_cases(std::size_t n) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rpm(-500.0, 500.0), ratio(0.05, 3.0);
  std::vector<oodsim::kernels::SplitCase> cases(n);
  for (auto& c : cases) c = {rpm(rng), {ratio(rng), ratio(rng), ratio(rng)}};
  return cases;
}

void BM_SplitSpeedsSerial(benchmark::State& state) {
  const auto cases = make_split_cases(static_cast<std::size_t>(state.range(0)));
  std::vector<std::array<double, 3>> out(cases.size());
  for (auto _ : state) {
    oodsim::kernels::split_speeds_serial({}, cases, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SplitSpeedsParallel(benchmark::State& state) {
  const auto cases = make_split_cases(static_cast<std::size_t>(state.range(0)));
  std::vector<std::array<double, 3>> out(cases.size());
  for (auto _ : state) {
    oodsim::kernels::split_speeds_parallel({}, cases, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<oodsim::traversal::Traversal> orientation_sweep(int n) {
  std::vector<oodsim::traversal::Traversal> runs;
  for (int i = 0; i < n; ++i) {
    runs.emplace_back(oodsim::pipe::reference_network(), oodsim::pipe::Orientation{120.0 * i / n},
                      oodsim::traversal::RobotConfig{}, oodsim::geartrain::GearParams{});
  }
  return runs;
}

void BM_OrientationSweepSerial(benchmark::State& state) {
  const auto runs = orientation_sweep(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oodsim::kernels::run_orientations_serial(runs, 1e-3, 0.1));
}

void BM_OrientationSweepParallel(benchmark::State& state) {
  const auto runs = orientation_sweep(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oodsim::kernels::run_orientations_parallel(runs, 1e-3, 0.1));
}

}  // namespace

BENCHMARK(BM_BendSpeedsSerial)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(BM_BendSpeedsParallel)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(BM_SplitSpeedsSerial)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(BM_SplitSpeedsParallel)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK(BM_OrientationSweepSerial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrientationSweepParallel)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
