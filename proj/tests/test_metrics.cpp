#include "oodsim/metrics.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "oodsim/errors.hpp"

namespace oodsim::metrics {
namespace {

TEST(Ape, Examples) {
  EXPECT_NEAR(ape(50.03, 50.27), 0.477, 0.001);
  EXPECT_EQ(ape(12.5, 12.5), 0.0);
  EXPECT_NEAR(ape(37.3, 35.93), 3.81, 0.005);
  EXPECT_DOUBLE_EQ(round_to_quantum(ape(37.3, 35.93), kApeReportingQuantum), 3.8);
  EXPECT_THROW(ape(1.0, 0.0), ZeroReference);
}

TEST(Ape, SymmetryAndScaleInvariance) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int n = 0; n < 500; ++n) {
    const double a = u(rng), b = u(rng), c = u(rng);
    if (b == 0.0 || c == 0.0) continue;
    EXPECT_NEAR(ape(-a, -b), ape(a, b), 1e-12 * (1.0 + ape(a, b)));
    EXPECT_NEAR(ape(c * a, c * b), ape(a, b), 1e-9 * (1.0 + ape(a, b)));
  }
}

TEST(ReferenceTable, IdsUniqueAndSourced) {
  std::set<std::string> ids;
  for (const auto& r : reference_speeds()) {
    EXPECT_TRUE(ids.insert(r.id).second) << r.id;
    EXPECT_GT(std::string(r.source).size(), 0u);
    EXPECT_GT(r.ape_bound_pct, 0.0);
  }
  for (const auto& b : reference_bands()) {
    EXPECT_TRUE(ids.insert(b.id).second) << b.id;
    EXPECT_LT(b.lo_mm_s, b.hi_mm_s);
  }
  EXPECT_EQ(reference_speeds().size(), 18u);
  EXPECT_EQ(reference_bands().size(), 9u);
}

// Simulated speeds at the nominal 50.27 mm/s and the reference bend geometry.
std::vector<RunSpeeds> default_runs() {
  std::vector<RunSpeeds> runs;
  for (double mu : {0.0, 30.0, 60.0}) {
    const traversal::Traversal t(pipe::reference_network(), pipe::Orientation{mu}, traversal::RobotConfig{},
                                 geartrain::GearParams{});
    const auto log = t.run(1e-3, 0.1);
    std::vector<bool> is_bend;
    for (const auto& s : t.network().sections) is_bend.push_back(pipe::is_bend(s));
    runs.push_back(run_speeds(mu, log.rows, is_bend));
  }
  return runs;
}

const ReportRow& row(const Report& rep, const std::string& id) {
  for (const auto& r : rep.rows) {
    if (r.id == id) return r;
  }
  throw std::runtime_error("no row " + id);
}

TEST(ReferenceReport, StraightAndBendRows) {
  const auto rep = reference_report(default_runs());
  EXPECT_EQ(rep.rows.size(), 27u);

  const auto& s0 = row(rep, "straight-mu0-A");
  EXPECT_NEAR(s0.simulated, 50.27, 0.005);
  EXPECT_EQ(s0.reference, 50.03);
  EXPECT_NEAR(s0.ape_pct, 0.47, 0.005);
  EXPECT_TRUE(s0.within);
  EXPECT_TRUE(row(rep, "straight-mu60-C").within);  // 2.18 %

  const auto& a0 = row(rep, "bend-mu0-A");
  EXPECT_NEAR(a0.simulated, 33.71, 0.005);
  EXPECT_TRUE(a0.within);
  EXPECT_TRUE(row(rep, "bend-mu0-B").within);
  EXPECT_TRUE(row(rep, "bend-mu30-A").within);  // 3.82 % quoted as 3.8 %
  EXPECT_TRUE(row(rep, "bend-mu30-B").within);
  EXPECT_TRUE(row(rep, "bend-mu30-C").within);

  // These published values sit outside their own bounds against the bend law.
  EXPECT_FALSE(row(rep, "bend-mu0-C").within);   // 1.27 %
  EXPECT_FALSE(row(rep, "bend-mu60-A").within);  // 4.26 %
  EXPECT_NEAR(row(rep, "bend-mu60-A").ape_pct, 4.26, 0.005);
  EXPECT_FALSE(rep.all_within());

  for (const auto& r : rep.rows) {
    if (r.check == "band") EXPECT_TRUE(r.within) << r.id;
    EXPECT_FALSE(r.source.empty());
  }
}

TEST(ReferenceReport, TamperedSpeedsViolateBounds) {
  auto runs = default_runs();
  runs[1].straight = {60.0, 60.0, 60.0};
  const auto rep = reference_report(runs);
  EXPECT_FALSE(row(rep, "straight-mu30-A").within);
}

TEST(ReferenceReport, MissingScenario) {
  EXPECT_THROW(reference_report({}), MissingScenario);
  auto runs = default_runs();
  runs.erase(runs.begin() + 1);
  EXPECT_THROW(reference_report(runs), MissingScenario);
}

TEST(ReferenceReport, OrientationsMatchModulo120) {
  auto runs = default_runs();
  runs[0].mu_deg = 120.0;
  runs[2].mu_deg = -60.0;
  EXPECT_NO_THROW(reference_report(runs));
}

TEST(ReferenceReport, Formats) {
  const auto rep = reference_report(default_runs());
  const auto text = format_text(rep);
  EXPECT_NE(text.find("bend-mu60-A"), std::string::npos);
  EXPECT_NE(text.find("BOUND VIOLATED"), std::string::npos);
  const auto json = format_json(rep);
  EXPECT_NE(json.find("\"reference_table_version\": 1"), std::string::npos);
  EXPECT_NE(json.find("\"all_within\": false"), std::string::npos);
}

TEST(LoadRun, ReadsSimulateOutput) {
  const auto dir = std::filesystem::temp_directory_path() / "oodsim_metrics_load_run";
  std::filesystem::create_directories(dir);
  const traversal::Traversal t(pipe::reference_network(), pipe::Orientation{30.0}, traversal::RobotConfig{},
                               geartrain::GearParams{});
  const auto log = t.run(1e-3, 0.1);
  {
    std::ofstream csv(dir / "timeseries.csv");
    traversal::write_csv(log, csv);
    std::ofstream js(dir / "summary.json");
    js << traversal::summary_json(log, t);
  }
  const auto run = load_run(dir);
  EXPECT_EQ(run.mu_deg, 30.0);
  EXPECT_TRUE(run.has_bend);
  EXPECT_NEAR(run.bend[0], 35.93, 0.005);
  EXPECT_NEAR(run.bend[1], 64.60, 0.005);
  EXPECT_NEAR(run.straight[2], 50.27, 0.005);
  EXPECT_THROW(load_run(dir / "missing"), std::ios_base::failure);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace oodsim::metrics
