#include "oodsim/scenario.hpp"

#include <gtest/gtest.h>

#include "oodsim/errors.hpp"

namespace oodsim::scenario {
namespace {

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text).validate();
  } catch (const Error& e) {
    return e.what();
  }
  return "no error";
}

TEST(Scenario, EmptyObjectIsReferencePreset) {
  const auto c = parse_scenario("{}");
  EXPECT_FALSE(c.network.has_value());
  EXPECT_EQ(c.robot.input_rpm, 120.0);
  EXPECT_EQ(c.dt_ms, 1.0);
  EXPECT_NO_THROW(c.validate());
  EXPECT_NEAR(c.resolved_network().total_length(), 3023.49, 1e-9);
}

TEST(Scenario, OverridesAndInlineNetwork) {
  const auto c = parse_scenario(R"({
    "network": {"pipe": {"inner_radius_mm": 50}, "sections": [
      {"type": "straight", "length_mm": 400, "label": "up"},
      {"type": "bend", "radius_mm": 150, "sweep_deg": 45}]},
    "mu_deg": 15, "robot": {"input_rpm": 60, "length_mm": 100},
    "gear": {"k": 10, "inertias": [1, 2, 3, 4, 5, 6]}, "dt_ms": 0.5, "out_dir": "x"})");
  ASSERT_TRUE(c.network.has_value());
  EXPECT_EQ(c.network->sections.size(), 2u);
  EXPECT_EQ(c.mu_deg, 15.0);
  EXPECT_EQ(c.robot.input_rpm, 60.0);
  EXPECT_EQ(c.robot.module_length_mm, 100.0);
  EXPECT_EQ(c.gear.k, 10.0);
  EXPECT_EQ(c.gear.j, 2.0);
  EXPECT_EQ(c.gear.inertias[5], 6.0);
  EXPECT_EQ(c.dt_ms, 0.5);
  EXPECT_EQ(c.out_dir.value_or(""), "x");
}

TEST(Scenario, DumpRoundTripIsByteIdentical) {
  for (const char* text : {"{}", R"({"mu_deg": 30, "robot": {"input_rpm": 90.5}})",
                           R"({"network": {"pipe": {"inner_radius_mm": 50}, "sections": [
                                {"type": "straight", "length_mm": 400.125},
                                {"type": "bend", "radius_mm": 150.3, "sweep_deg": 45, "label": "b1"}]},
                               "gear": {"inertias": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6]}, "out_dir": "runs/a"})"}) {
    const auto first = dump_scenario(parse_scenario(text));
    const auto second = dump_scenario(parse_scenario(first));
    EXPECT_EQ(first, second);
  }
}

TEST(Scenario, ErrorsNameTheField) {
  EXPECT_NE(error_of(R"({"robot": {"length_mm": "long"}})").find("robot.length_mm"), std::string::npos);
  EXPECT_NE(error_of(R"({"robot": {"wheel_mm": 3}})").find("robot.wheel_mm: unknown field"), std::string::npos);
  EXPECT_NE(error_of(R"({"speed": 3})").find("speed: unknown field"), std::string::npos);
  EXPECT_NE(error_of(R"({"gear": {"k": -1}})").find("gear.k"), std::string::npos);
  EXPECT_NE(error_of(R"({"gear": {"inertias": [1]}})").find("gear.inertias"), std::string::npos);
  EXPECT_NE(error_of(R"({"dt_ms": 0})").find("dt_ms"), std::string::npos);
  EXPECT_NE(error_of(R"({"network": "other"})").find("unknown preset"), std::string::npos);
  EXPECT_NE(error_of("not json").find("invalid JSON"), std::string::npos);
  EXPECT_NE(error_of(R"({"robot": {"spring_preload_mm": 20}})").find("robot.spring_preload_mm"), std::string::npos);
}

TEST(Scenario, GeometryErrorForTightBend) {
  const auto c = parse_scenario(R"({"network": {"pipe": {"inner_radius_mm": 100},
      "sections": [{"type": "straight", "length_mm": 400}, {"type": "bend", "radius_mm": 80, "sweep_deg": 90}]}})");
  EXPECT_THROW(c.validate(), GeometryError);
}

}  // namespace
}  // namespace oodsim::scenario
