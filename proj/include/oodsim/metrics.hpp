#pragma once

// Comparison of simulated track speeds with published reference values.

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "oodsim/traversal.hpp"

namespace oodsim::metrics {

/// Absolute percentage error |observed - theoretical| / |theoretical| * 100.
/// Throws ZeroReference when theoretical is zero.
double ape(double observed, double theoretical);

/// Published errors are quoted to one decimal; bounds are checked at that precision.
inline constexpr double kApeReportingQuantum = 0.1;

double round_to_quantum(double value, double quantum);

enum class SectionKind { kStraight, kBend };

const char* to_string(SectionKind kind);

/// One published track speed with the error bound it was reported under.
struct ReferenceSpeed {
  const char* id;
  double mu_deg;
  SectionKind kind;
  int track;  // 0..2 for A..C
  double speed_mm_s;
  double ape_bound_pct;
  const char* source;
};

/// Published min/max speed band for a track; checked as containment only.
struct ReferenceBand {
  const char* id;
  double mu_deg;
  int track;
  double lo_mm_s;
  double hi_mm_s;
  const char* source;
};

inline constexpr int kReferenceTableVersion = 1;

std::span<const ReferenceSpeed> reference_speeds();
std::span<const ReferenceBand> reference_bands();

/// Mean per-track speeds of one run, split by section kind.
struct RunSpeeds {
  double mu_deg = 0.0;
  std::array<double, 3> straight{};
  std::array<double, 3> bend{};
  bool has_straight = false;
  bool has_bend = false;
};

RunSpeeds run_speeds(double mu_deg, const std::vector<traversal::TraversalState>& rows,
                     const std::vector<bool>& section_is_bend);

/// Reads `summary.json` and `timeseries.csv` from a simulate output directory.
RunSpeeds load_run(const std::filesystem::path& dir);

struct ReportRow {
  std::string id;
  std::string check;  // "ape" or "band"
  double mu_deg = 0.0;
  SectionKind kind = SectionKind::kStraight;
  int track = 0;
  double simulated = 0.0;
  double reference = 0.0;  // published value, or band low end
  double reference_hi = 0.0;
  double ape_pct = 0.0;
  double bound_pct = 0.0;
  bool within = false;
  std::string source;
};

struct Report {
  int table_version = kReferenceTableVersion;
  std::vector<ReportRow> rows;

  bool all_within() const;
};

/// Needs one run for each of mu = 0, 30, 60 degrees (modulo 120); throws MissingScenario otherwise.
Report reference_report(const std::vector<RunSpeeds>& runs);

std::string format_text(const Report& report);
std::string format_json(const Report& report);

}  // namespace oodsim::metrics
