#include "oodsim/pipe_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oodsim/errors.hpp"

namespace oodsim::pipe {
namespace {

constexpr double kR = 418.78;
constexpr double kr = 137.95;

// Independent evaluation of the bend law, written out for the oracle.
double bend_oracle(double v, double R, double r, double deg) {
  return v * (R - r * std::cos(deg * std::numbers::pi / 180.0)) / R;
}

TEST(BendTrackSpeed, Examples) {
  EXPECT_NEAR(bend_track_speed(50.24, kR, kr, 0.0), 33.69, 0.005);
  EXPECT_NEAR(bend_track_speed(50.24, kR, kr, 90.0), 50.24, 1e-12);
  EXPECT_NEAR(bend_track_speed(50.24, kR, kr, 120.0), 58.51, 0.01);
  EXPECT_NEAR(bend_track_speed(50.24, kR, kr, 120.0), 58.5148, 1e-4);
}

TEST(BendTrackSpeed, RejectsDegenerateGeometry) {
  EXPECT_THROW(bend_track_speed(50.0, 100.0, 100.0, 0.0), GeometryError);
  EXPECT_THROW(bend_track_speed(50.0, 90.0, 100.0, 0.0), GeometryError);
  EXPECT_THROW(bend_track_speed(50.0, 90.0, 0.0, 0.0), GeometryError);
}

TEST(TrackSpeeds, StraightIsUniform) {
  const PipeSpec spec{kr};
  for (double mu : {0.0, 17.0, 60.0, 119.0}) {
    const auto v = track_speeds(50.0, Straight{450.0, ""}, Orientation{mu}, spec);
    EXPECT_EQ(v[0], 50.0);
    EXPECT_EQ(v[1], 50.0);
    EXPECT_EQ(v[2], 50.0);
  }
}

TEST(TrackSpeeds, BendExamples) {
  const PipeSpec spec{kr};
  const Bend elbow{kR, 90.0, ""};
  const auto v0 = track_speeds(50.24, elbow, Orientation{0.0}, spec);
  EXPECT_NEAR(v0[0], 33.69, 0.005);
  EXPECT_NEAR(v0[1], 58.51, 0.01);
  EXPECT_NEAR(v0[2], 58.51, 0.01);

  const auto v30 = track_speeds(50.24, elbow, Orientation{30.0}, spec);
  EXPECT_NEAR(v30[0], 35.93, 0.03);
  EXPECT_NEAR(v30[1], 64.58, 0.01);
  EXPECT_NEAR(v30[2], 50.24, 1e-9);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(v30[i], bend_oracle(50.24, kR, kr, 30.0 + 120.0 * i), 1e-12);
}

TEST(TrackPathLength, Examples) {
  const PipeSpec spec{kr};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(track_path_length(Straight{450.0, ""}, Orientation{10.0}, spec, i), 450.0);
  }
  const Bend elbow{kR, 90.0, ""};
  EXPECT_NEAR(track_path_length(elbow, Orientation{0.0}, spec, 0), 441.13, 0.01);
  EXPECT_NEAR(track_path_length(elbow, Orientation{0.0}, spec, 0), (std::numbers::pi / 2) * (kR - kr), 1e-9);
  const double sum = track_path_length(elbow, Orientation{0.0}, spec, 0) +
                     track_path_length(elbow, Orientation{0.0}, spec, 1) +
                     track_path_length(elbow, Orientation{0.0}, spec, 2);
  EXPECT_NEAR(sum, 3.0 * centerline_length(elbow), 1e-9);
}

TEST(ReferenceNetwork, Layout) {
  const auto n = reference_network();
  ASSERT_EQ(n.sections.size(), 5u);
  EXPECT_NO_THROW(n.validate());
  EXPECT_NEAR(n.total_length(), 3023.49, 1e-9);
  EXPECT_NEAR(centerline_length(n.sections[1]), 657.83, 1e-9);
  EXPECT_NEAR(centerline_length(n.sections[3]), 1315.66, 1e-9);
  EXPECT_NEAR(std::get<Bend>(n.sections[1]).radius_mm, 418.78, 0.01);
  EXPECT_NEAR(n.section_start(2), 550.0 + 657.83, 1e-9);
  EXPECT_FALSE(is_bend(n.sections[0]));
  EXPECT_TRUE(is_bend(n.sections[3]));
}

TEST(PipeNetwork, Validation) {
  PipeNetwork n{PipeSpec{100.0}, {Straight{10.0, ""}, Bend{90.0, 90.0, ""}}};
  try {
    n.validate();
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_NE(std::string(e.what()).find("bend radius must exceed pipe radius"), std::string::npos);
  }
  EXPECT_THROW((PipeNetwork{PipeSpec{100.0}, {}}).validate(), ConfigError);
  EXPECT_THROW((PipeNetwork{PipeSpec{0.0}, {Straight{1.0, ""}}}).validate(), ConfigError);
  EXPECT_THROW((PipeNetwork{PipeSpec{10.0}, {Straight{-1.0, ""}}}).validate(), ConfigError);
  EXPECT_THROW((PipeNetwork{PipeSpec{10.0}, {Bend{50.0, 0.0, ""}}}).validate(), ConfigError);
  EXPECT_THROW((PipeNetwork{PipeSpec{10.0}, {Bend{50.0, 361.0, ""}}}).validate(), ConfigError);
  EXPECT_NO_THROW((PipeNetwork{PipeSpec{10.0}, {Bend{50.0, 360.0, ""}}}).validate());
}

struct RandomBend {
  double v, R, r, mu;
};

std::vector<RandomBend> random_bends(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> v(0.0, 200.0), r(1.0, 300.0), gap(1e-3, 2000.0), mu(-720.0, 720.0);
  std::vector<RandomBend> out;
  for (int i = 0; i < n; ++i) {
    const double rr = r(rng);
    out.push_back({v(rng), rr + gap(rng), rr, mu(rng)});
  }
  return out;
}

TEST(BendProperties, ZeroSumModulation) {
  for (const auto& b : random_bends(1, 1000)) {
    const auto v = track_speeds(b.v, Bend{b.R, 90.0, ""}, Orientation{b.mu}, PipeSpec{b.r});
    EXPECT_NEAR(v[0] + v[1] + v[2], 3.0 * b.v, 1e-9 * std::max(1.0, 3.0 * b.v));
  }
}

TEST(BendProperties, SpeedLengthConsistencyAndOrdering) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> sweep(1.0, 360.0);
  for (const auto& b : random_bends(2, 500)) {
    const Bend bend{b.R, sweep(rng), ""};
    const Orientation o{b.mu};
    const PipeSpec spec{b.r};
    const auto v = track_speeds(50.0, bend, o, spec);
    std::array<double, 3> len{}, time{};
    for (std::size_t i = 0; i < 3; ++i) {
      len[i] = track_path_length(bend, o, spec, i);
      time[i] = len[i] / v[i];
    }
    EXPECT_NEAR(time[1] / time[0], 1.0, 1e-9);
    EXPECT_NEAR(time[2] / time[0], 1.0, 1e-9);

    // The track farthest from the bend axis is fastest and longest.
    std::array<double, 3> radius{};
    for (std::size_t i = 0; i < 3; ++i) radius[i] = b.R - b.r * std::cos(o.track_angle_deg(i) * std::numbers::pi / 180.0);
    const auto far = std::max_element(radius.begin(), radius.end()) - radius.begin();
    const auto fast = std::max_element(v.begin(), v.end()) - v.begin();
    const auto longest = std::max_element(len.begin(), len.end()) - len.begin();
    EXPECT_EQ(far, fast);
    EXPECT_EQ(far, longest);
  }
}

TEST(BendProperties, PeriodicityAndBounds) {
  for (const auto& b : random_bends(3, 500)) {
    const PipeSpec spec{b.r};
    const Bend bend{b.R, 180.0, ""};
    auto a = track_speeds(b.v, bend, Orientation{b.mu}, spec);
    auto c = track_speeds(b.v, bend, Orientation{b.mu + 120.0}, spec);
    std::sort(a.begin(), a.end());
    std::sort(c.begin(), c.end());
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[i], c[i], 1e-9 * (1.0 + b.v));
    const double lo = b.v * (b.R - b.r) / b.R, hi = b.v * (b.R + b.r) / b.R;
    for (double s : a) {
      EXPECT_GE(s, lo - 1e-12 * (1.0 + b.v));
      EXPECT_LE(s, hi + 1e-12 * (1.0 + b.v));
    }
  }
}

TEST(NetworkJson, ReferenceNetworkEmission) {
  const std::string expected =
      "{\n"
      "  \"pipe\": {\"inner_radius_mm\": 137.95},\n"
      "  \"sections\": [\n"
      "    {\"type\": \"straight\", \"length_mm\": 550.00},\n"
      "    {\"type\": \"bend\", \"radius_mm\": 418.79, \"sweep_deg\": 90.00},\n"
      "    {\"type\": \"straight\", \"length_mm\": 350.00},\n"
      "    {\"type\": \"bend\", \"radius_mm\": 418.79, \"sweep_deg\": 180.00},\n"
      "    {\"type\": \"straight\", \"length_mm\": 150.00}\n"
      "  ]\n"
      "}\n";
  EXPECT_EQ(network_to_json_text(reference_network()), expected);
}

TEST(NetworkJson, ParseAndReemitIsStable) {
  const auto text = network_to_json_text(reference_network());
  const auto parsed = network_from_json_text(text);
  EXPECT_EQ(network_to_json_text(parsed), text);
  ASSERT_EQ(parsed.sections.size(), 5u);
  // Two-decimal radius lengthens both bends by 0.0024 mm * 3pi/2.
  EXPECT_NEAR(parsed.total_length(), 3023.49, 0.02);
}

TEST(NetworkJson, ErrorsNameTheField) {
  auto msg = [](const std::string& text) {
    try {
      network_from_json_text(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(msg("{").find("invalid JSON"), std::string::npos);
  EXPECT_NE(msg(R"({"sections": []})").find("network.pipe"), std::string::npos);
  EXPECT_NE(msg(R"({"pipe": {"inner_radius_mm": 10}, "sections": [{"type": "bend", "radius_mm": 50}]})")
                .find("network.sections[0].sweep_deg"),
            std::string::npos);
  EXPECT_NE(msg(R"({"pipe": {"inner_radius_mm": 10}, "sections": [{"type": "tee"}]})").find("unknown section type"),
            std::string::npos);
}

}  // namespace
}  // namespace oodsim::pipe
