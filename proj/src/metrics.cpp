#include "oodsim/metrics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "oodsim/errors.hpp"

namespace oodsim::metrics {
namespace {

using SK = SectionKind;

// Published track speeds (mm/s). Straight-run values apply to every track.
// Bound: the largest error the source reports for that orientation and section kind.
constexpr ReferenceSpeed kSpeeds[] = {
    {"straight-mu0-A", 0.0, SK::kStraight, 0, 50.03, 2.2, "simulated straight-run speed, mu=0"},
    {"straight-mu0-B", 0.0, SK::kStraight, 1, 50.03, 2.2, "simulated straight-run speed, mu=0"},
    {"straight-mu0-C", 0.0, SK::kStraight, 2, 50.03, 2.2, "simulated straight-run speed, mu=0"},
    {"straight-mu30-A", 30.0, SK::kStraight, 0, 50.22, 2.2, "simulated straight-run speed, mu=30"},
    {"straight-mu30-B", 30.0, SK::kStraight, 1, 50.22, 2.2, "simulated straight-run speed, mu=30"},
    {"straight-mu30-C", 30.0, SK::kStraight, 2, 50.22, 2.2, "simulated straight-run speed, mu=30"},
    {"straight-mu60-A", 60.0, SK::kStraight, 0, 51.36, 2.2, "simulated straight-run speed, mu=60"},
    {"straight-mu60-B", 60.0, SK::kStraight, 1, 51.36, 2.2, "simulated straight-run speed, mu=60"},
    {"straight-mu60-C", 60.0, SK::kStraight, 2, 51.36, 2.2, "simulated straight-run speed, mu=60"},
    {"bend-mu0-A", 0.0, SK::kBend, 0, 33.62, 1.2, "simulated mean bend speed, inner module A, mu=0"},
    {"bend-mu0-B", 0.0, SK::kBend, 1, 58.7, 1.2, "simulated mean bend speed, outer module B, mu=0"},
    {"bend-mu0-C", 0.0, SK::kBend, 2, 57.8, 1.2, "simulated mean bend speed, outer module C, mu=0"},
    {"bend-mu30-A", 30.0, SK::kBend, 0, 37.3, 3.8, "simulated mean bend speed, module A, mu=30"},
    {"bend-mu30-B", 30.0, SK::kBend, 1, 63.8, 3.8, "simulated mean bend speed, module B, mu=30"},
    {"bend-mu30-C", 30.0, SK::kBend, 2, 50.3, 3.8, "simulated mean bend speed, module C, mu=30"},
    {"bend-mu60-A", 60.0, SK::kBend, 0, 40.2, 2.5, "simulated mean bend speed, module A, mu=60"},
    {"bend-mu60-B", 60.0, SK::kBend, 1, 68.5, 2.5, "simulated mean bend speed, module B, mu=60"},
    {"bend-mu60-C", 60.0, SK::kBend, 2, 41.3, 2.5, "simulated mean bend speed, module C, mu=60"},
};

constexpr ReferenceBand kBands[] = {
    {"band-mu0-A", 0.0, 0, 30.0, 37.25, "bend speed peak-to-peak range, inner module, mu=0"},
    {"band-mu0-B", 0.0, 1, 52.0, 60.0, "bend speed peak-to-peak range, outer modules, mu=0"},
    {"band-mu0-C", 0.0, 2, 52.0, 60.0, "bend speed peak-to-peak range, outer modules, mu=0"},
    {"band-mu30-A", 30.0, 0, 32.5, 40.0, "bend speed peak-to-peak range, module A, mu=30"},
    {"band-mu30-B", 30.0, 1, 60.0, 75.0, "bend speed peak-to-peak range, module B, mu=30"},
    {"band-mu30-C", 30.0, 2, 49.0, 52.0, "bend speed peak-to-peak range, module C, mu=30"},
    {"band-mu60-A", 60.0, 0, 32.5, 48.0, "bend speed peak-to-peak range, modules A and C, mu=60"},
    {"band-mu60-B", 60.0, 1, 62.0, 75.0, "bend speed peak-to-peak range, module B, mu=60"},
    {"band-mu60-C", 60.0, 2, 32.5, 48.0, "bend speed peak-to-peak range, modules A and C, mu=60"},
};

constexpr std::array<double, 3> kRequiredMu{0.0, 30.0, 60.0};

double canonical_mu(double mu) {
  double m = std::fmod(mu, 120.0);
  if (m < 0.0) m += 120.0;
  return m;
}

const RunSpeeds* find_run(const std::vector<RunSpeeds>& runs, double mu) {
  for (const auto& r : runs) {
    if (std::abs(canonical_mu(r.mu_deg) - mu) < 1e-6) return &r;
  }
  return nullptr;
}

}  // namespace

double ape(double observed, double theoretical) {
  if (theoretical == 0.0) throw ZeroReference("percentage error against a zero reference");
  return std::abs(observed - theoretical) / std::abs(theoretical) * 100.0;
}

double round_to_quantum(double value, double quantum) { return std::round(value / quantum) / (1.0 / quantum); }

const char* to_string(SectionKind kind) { return kind == SectionKind::kBend ? "bend" : "straight"; }

std::span<const ReferenceSpeed> reference_speeds() { return kSpeeds; }
std::span<const ReferenceBand> reference_bands() { return kBands; }

RunSpeeds run_speeds(double mu_deg, const std::vector<traversal::TraversalState>& rows,
                     const std::vector<bool>& section_is_bend) {
  RunSpeeds out;
  out.mu_deg = mu_deg;
  std::array<double, 3> sum_s{}, sum_b{};
  std::size_t n_s = 0, n_b = 0;
  for (const auto& r : rows) {
    if (r.section >= section_is_bend.size()) {
      throw ConfigError(fmt::format("csv: section index {} out of range", r.section));
    }
    auto& sum = section_is_bend[r.section] ? sum_b : sum_s;
    (section_is_bend[r.section] ? n_b : n_s)++;
    for (int i = 0; i < 3; ++i) sum[i] += r.track_speed_mm_s[i];
  }
  for (int i = 0; i < 3; ++i) {
    if (n_s) out.straight[i] = sum_s[i] / static_cast<double>(n_s);
    if (n_b) out.bend[i] = sum_b[i] / static_cast<double>(n_b);
  }
  out.has_straight = n_s > 0;
  out.has_bend = n_b > 0;
  return out;
}

RunSpeeds load_run(const std::filesystem::path& dir) {
  std::ifstream sf(dir / "summary.json");
  if (!sf) throw std::ios_base::failure("cannot read " + (dir / "summary.json").string());
  nlohmann::json summary;
  try {
    summary = nlohmann::json::parse(sf);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("summary.json: {}", e.what()));
  }
  if (!summary.contains("mu_deg") || !summary["mu_deg"].is_number()) {
    throw ConfigError("summary.json.mu_deg: missing or not a number");
  }
  if (!summary.contains("sections") || !summary["sections"].is_array()) {
    throw ConfigError("summary.json.sections: missing or not an array");
  }
  std::vector<bool> is_bend;
  for (const auto& s : summary["sections"]) is_bend.push_back(s.value("type", std::string{}) == "bend");

  std::ifstream cf(dir / "timeseries.csv");
  if (!cf) throw std::ios_base::failure("cannot read " + (dir / "timeseries.csv").string());
  return run_speeds(summary["mu_deg"].get<double>(), traversal::read_csv(cf), is_bend);
}

bool Report::all_within() const {
  for (const auto& r : rows) {
    if (!r.within) return false;
  }
  return true;
}

Report reference_report(const std::vector<RunSpeeds>& runs) {
  for (double mu : kRequiredMu) {
    if (find_run(runs, mu) == nullptr) throw MissingScenario(fmt::format("no run for mu = {} deg", mu));
  }
  Report rep;
  for (const auto& ref : kSpeeds) {
    const RunSpeeds& run = *find_run(runs, ref.mu_deg);
    const bool bend = ref.kind == SectionKind::kBend;
    if (bend ? !run.has_bend : !run.has_straight) {
      throw MissingScenario(fmt::format("run for mu = {} deg has no {} samples", ref.mu_deg, to_string(ref.kind)));
    }
    ReportRow row;
    row.id = ref.id;
    row.check = "ape";
    row.mu_deg = ref.mu_deg;
    row.kind = ref.kind;
    row.track = ref.track;
    row.simulated = bend ? run.bend[ref.track] : run.straight[ref.track];
    row.reference = ref.speed_mm_s;
    row.ape_pct = ape(ref.speed_mm_s, row.simulated);
    row.bound_pct = ref.ape_bound_pct;
    row.within = round_to_quantum(row.ape_pct, kApeReportingQuantum) <= ref.ape_bound_pct;
    row.source = ref.source;
    rep.rows.push_back(row);
  }
  for (const auto& band : kBands) {
    const RunSpeeds& run = *find_run(runs, band.mu_deg);
    ReportRow row;
    row.id = band.id;
    row.check = "band";
    row.mu_deg = band.mu_deg;
    row.kind = SectionKind::kBend;
    row.track = band.track;
    row.simulated = run.bend[band.track];
    row.reference = band.lo_mm_s;
    row.reference_hi = band.hi_mm_s;
    row.within = run.has_bend && row.simulated >= band.lo_mm_s && row.simulated <= band.hi_mm_s;
    row.source = band.source;
    rep.rows.push_back(row);
  }
  return rep;
}

std::string format_text(const Report& report) {
  std::string out = fmt::format("{:<16} {:>5} {:<8} {:>5} {:>10} {:>15} {:>7} {:>7}  {:<4}  {}\n", "id", "mu",
                                "section", "track", "sim mm/s", "reference mm/s", "APE %", "bound", "ok", "source");
  for (const auto& r : report.rows) {
    const std::string ref = r.check == "band" ? fmt::format("{:.2f}-{:.2f}", r.reference, r.reference_hi)
                                              : fmt::format("{:.2f}", r.reference);
    const std::string err = r.check == "band" ? "-" : fmt::format("{:.2f}", r.ape_pct);
    const std::string bound = r.check == "band" ? "range" : fmt::format("{:.1f}", r.bound_pct);
    out += fmt::format("{:<16} {:>5.0f} {:<8} {:>5} {:>10.2f} {:>15} {:>7} {:>7}  {:<4}  {}\n", r.id, r.mu_deg,
                       to_string(r.kind), pipe::kTrackNames[r.track], r.simulated, ref, err, bound,
                       r.within ? "yes" : "NO", r.source);
  }
  out += fmt::format("reference table v{}: {}\n", report.table_version,
                     report.all_within() ? "all rows within bounds" : "BOUND VIOLATED");
  return out;
}

std::string format_json(const Report& report) {
  nlohmann::ordered_json j;
  j["reference_table_version"] = report.table_version;
  j["all_within"] = report.all_within();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json o;
    o["id"] = r.id;
    o["check"] = r.check;
    o["mu_deg"] = r.mu_deg;
    o["section"] = to_string(r.kind);
    o["track"] = std::string(1, pipe::kTrackNames[r.track]);
    o["simulated_mm_s"] = r.simulated;
    if (r.check == "band") {
      o["band_mm_s"] = {r.reference, r.reference_hi};
    } else {
      o["reference_mm_s"] = r.reference;
      o["ape_pct"] = r.ape_pct;
      o["bound_pct"] = r.bound_pct;
    }
    o["within"] = r.within;
    o["source"] = r.source;
    rows.push_back(o);
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

}  // namespace oodsim::metrics
