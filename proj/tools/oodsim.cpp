// oodsim: three-track pipe climber simulator.
//
// Exit codes:
//   0  success
//   1  I/O failure
//   2  bad configuration, bad flags, non-positive ratio, missing scenario
//   3  impossible geometry (bend radius <= pipe radius)
//   4  report: a published error bound is violated

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "oodsim/errors.hpp"
#include "oodsim/geartrain.hpp"
#include "oodsim/kernels.hpp"
#include "oodsim/metrics.hpp"
#include "oodsim/pipe_geometry.hpp"
#include "oodsim/scenario.hpp"
#include "oodsim/traversal.hpp"
#include "oodsim/units.hpp"

namespace fs = std::filesystem;
using namespace oodsim;

namespace {

enum ExitCode : int { kOk = 0, kIo = 1, kConfig = 2, kGeometry = 3, kBoundViolated = 4 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + p.string());
}

std::string mu_dir_name(double mu) {
  std::string s = fmt::format("mu_{:g}", mu);
  for (auto& ch : s) {
    if (ch == '.') ch = 'p';
    if (ch == '-') ch = 'm';
  }
  return s;
}

struct SimulateOpts {
  std::string preset;
  std::string config_path;
  std::vector<double> mu;
  std::optional<double> dt_ms;
  std::optional<double> sample_ms;
  std::string out;
  std::string format = "text";
  std::string law = "differential";
  bool dump_config = false;
};

scenario::ScenarioConfig load_scenario(const std::string& preset, const std::string& config_path) {
  if (!config_path.empty()) return scenario::parse_scenario(read_file(config_path));
  if (!preset.empty() && preset != "paper") throw ConfigError(fmt::format("--preset: unknown preset '{}'", preset));
  return {};
}

int cmd_simulate(const SimulateOpts& o) {
  auto cfg = load_scenario(o.preset, o.config_path);
  if (o.dt_ms) cfg.dt_ms = *o.dt_ms;
  if (o.sample_ms) cfg.sample_ms = *o.sample_ms;
  if (!o.out.empty()) cfg.out_dir = o.out;
  std::vector<double> mus = o.mu.empty() ? std::vector<double>{cfg.mu_deg} : o.mu;
  if (mus.size() == 1) cfg.mu_deg = mus.front();

  if (o.dump_config) {
    cfg.validate();
    std::cout << scenario::dump_scenario(cfg);
    return kOk;
  }
  cfg.validate();

  fs::path root = ".";
  if (cfg.out_dir) {
    root = *cfg.out_dir;
  } else if (const char* env = std::getenv("OODSIM_OUT_DIR")) {
    root = env;
  }

  const auto law = o.law == "equal" ? traversal::TrackLaw::kEqualSpeed : traversal::TrackLaw::kDifferential;
  const auto network = cfg.resolved_network();
  std::vector<traversal::Traversal> runs;
  for (double mu : mus) runs.emplace_back(network, pipe::Orientation{mu}, cfg.robot, cfg.gear, law);
  const auto logs = kernels::run_orientations_parallel(runs, cfg.dt_ms / 1e3, cfg.sample_ms / 1e3);

  for (std::size_t i = 0; i < runs.size(); ++i) {
    const fs::path dir = mus.size() == 1 ? root : root / mu_dir_name(mus[i]);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    std::ostringstream csv;
    traversal::write_csv(logs[i], csv);
    const auto summary = traversal::summary_json(logs[i], runs[i]);
    auto run_cfg = cfg;
    run_cfg.mu_deg = mus[i];
    run_cfg.out_dir = dir.string();
    write_file(dir / "timeseries.csv", csv.str());
    write_file(dir / "summary.json", summary);
    write_file(dir / "scenario.json", scenario::dump_scenario(run_cfg));

    if (o.format == "json") {
      std::cout << summary;
    } else if (o.format == "csv") {
      std::cout << csv.str();
    } else {
      const auto& fin = logs[i].final_state();
      const auto slip = traversal::slip_metric(logs[i], network, runs[i].orientation());
      std::cout << fmt::format(
          "mu {:g} deg -> {}\n  nominal speed {:.4f} mm/s, path {:.2f} mm, time {:.4f} s\n"
          "  track distance A {:.3f} B {:.3f} C {:.3f} mm\n  slip A {:.3e} B {:.3e} C {:.3e} mm\n",
          mus[i], dir.string(), logs[i].nominal_speed_mm_s, logs[i].effective_path_mm(), fin.time_s,
          fin.track_distance_mm[0], fin.track_distance_mm[1], fin.track_distance_mm[2], slip.signed_mm[0],
          slip.signed_mm[1], slip.signed_mm[2]);
    }
  }
  return kOk;
}

struct GeartrainOpts {
  double input_rpm = 120.0;
  double k = 20.0;
  double j = 2.0;
  std::vector<double> ratios;
  bool rim = false;
  double ds = 80.0;
  std::string format = "text";
};

int cmd_geartrain(const GeartrainOpts& o) {
  geartrain::GearParams params;
  params.k = o.k;
  params.j = o.j;
  params.validate();
  const auto input = AngularSpeed::from_rpm(o.input_rpm);
  std::array<AngularSpeed, 3> out;
  if (o.ratios.empty()) {
    out.fill(geartrain::equal_load_output_speed(params, input));
  } else {
    if (o.ratios.size() != 3) throw ConfigError("--ratios: expected three comma-separated values");
    out = geartrain::distribute_speeds(params, input, {o.ratios[0], o.ratios[1], o.ratios[2]});
  }
  if (o.rim && !(o.ds > 0.0)) throw ConfigError("--ds: sprocket diameter must be > 0");

  if (o.format == "json") {
    nlohmann::ordered_json j;
    j["input_rpm"] = o.input_rpm;
    j["ring_rpm"] = geartrain::ring_speed(params, input).rpm();
    j["output_rpm"] = {out[0].rpm(), out[1].rpm(), out[2].rpm()};
    if (o.rim) {
      j["sprocket_diameter_mm"] = o.ds;
      j["rim_mm_s"] = {rim_speed_mm_s(out[0], o.ds), rim_speed_mm_s(out[1], o.ds), rim_speed_mm_s(out[2], o.ds)};
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << fmt::format("input {:g} rpm, k {:g}, j {:g}, ring {:.6g} rpm\n", o.input_rpm, o.k, o.j,
                           geartrain::ring_speed(params, input).rpm());
  std::cout << (o.rim ? fmt::format("{:<7} {:>12} {:>12}\n", "output", "rpm", "rim mm/s")
                      : fmt::format("{:<7} {:>12}\n", "output", "rpm"));
  for (int i = 0; i < 3; ++i) {
    if (o.rim) {
      std::cout << fmt::format("O{:<6} {:>12.4f} {:>12.4f}\n", i + 1, out[i].rpm(), rim_speed_mm_s(out[i], o.ds));
    } else {
      std::cout << fmt::format("O{:<6} {:>12.4f}\n", i + 1, out[i].rpm());
    }
  }
  return kOk;
}

int cmd_report(const std::vector<std::string>& dirs, const std::string& format) {
  std::vector<metrics::RunSpeeds> runs;
  for (const auto& d : dirs) {
    try {
      runs.push_back(metrics::load_run(d));
    } catch (const std::ios_base::failure& e) {
      throw IoError(e.what());
    }
  }
  const auto report = metrics::reference_report(runs);
  std::cout << (format == "json" ? metrics::format_json(report) : metrics::format_text(report));
  return report.all_within() ? kOk : kBoundViolated;
}

int cmd_network(const std::string& preset, const std::string& config_path) {
  const auto cfg = load_scenario(preset, config_path);
  const auto n = cfg.resolved_network();
  n.validate();
  std::cout << pipe::network_to_json_text(n);
  return kOk;
}

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kGeometry;
  } catch (const MissingScenario& e) {
    std::cerr << "error: MissingScenario: " << e.what() << "\n";
    return kConfig;
  } catch (const NonPositiveRatio& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-output open differential pipe climber simulator"};
  app.require_subcommand(1);

  SimulateOpts sim;
  auto* simulate = app.add_subcommand("simulate", "Run a traversal and write timeseries.csv and summary.json");
  auto* preset_opt = simulate->add_option("--preset", sim.preset, "Built-in scenario")->check(CLI::IsMember({"paper"}));
  simulate->add_option("--config", sim.config_path, "Scenario JSON file")->excludes(preset_opt);
  simulate->add_option("--mu", sim.mu, "Orientation(s) of module A in degrees, comma separated")->delimiter(',');
  simulate->add_option("--dt-ms", sim.dt_ms, "Time step in ms");
  simulate->add_option("--sample-ms", sim.sample_ms, "Sampling cadence in ms");
  simulate->add_option("--out", sim.out, "Output directory (default: $OODSIM_OUT_DIR or .)");
  simulate->add_option("--format", sim.format, "stdout format")->check(CLI::IsMember({"text", "json", "csv"}));
  simulate->add_option("--law", sim.law, "Track speed law in bends")->check(CLI::IsMember({"differential", "equal"}));
  simulate->add_flag("--dump-config", sim.dump_config, "Print the resolved scenario JSON and exit");

  GeartrainOpts gear;
  auto* geartrain_cmd = app.add_subcommand("geartrain", "Output speeds of the differential");
  geartrain_cmd->add_option("--input-rpm", gear.input_rpm, "Input speed in rpm");
  geartrain_cmd->add_option("--k", gear.k, "Input to ring reduction");
  geartrain_cmd->add_option("--j", gear.j, "Ring to output step-up");
  geartrain_cmd->add_option("--ratios", gear.ratios, "Three demand ratios, comma separated")->delimiter(',');
  geartrain_cmd->add_flag("--rim", gear.rim, "Also print sprocket rim speeds");
  geartrain_cmd->add_option("--ds", gear.ds, "Sprocket diameter in mm");
  geartrain_cmd->add_option("--format", gear.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> report_dirs;
  std::string report_format = "text";
  auto* report = app.add_subcommand("report", "Compare runs at mu = 0, 30, 60 with published values");
  report->add_option("runs", report_dirs, "simulate output directories");
  report->add_option("--format", report_format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string net_preset, net_config;
  auto* network = app.add_subcommand("network", "Print a network descriptor");
  auto* net_preset_opt = network->add_option("--preset", net_preset)->check(CLI::IsMember({"paper"}));
  network->add_option("--config", net_config)->excludes(net_preset_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  if (*simulate) return guarded([&] { return cmd_simulate(sim); });
  if (*geartrain_cmd) return guarded([&] { return cmd_geartrain(gear); });
  if (*report) return guarded([&] { return cmd_report(report_dirs, report_format); });
  if (*network) return guarded([&] { return cmd_network(net_preset, net_config); });
  return kConfig;
}
