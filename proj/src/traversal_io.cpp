#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "json.hpp"
#include "oodsim/errors.hpp"
#include "oodsim/traversal.hpp"

namespace oodsim::traversal {

void write_csv(const TraversalLog& log, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : log.rows) {
    out << fmt::format("{:.6f},{:.6f},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f}\n", r.time_s,
                       r.s_mm, r.section, r.track_speed_mm_s[0], r.track_speed_mm_s[1], r.track_speed_mm_s[2],
                       r.track_distance_mm[0], r.track_distance_mm[1], r.track_distance_mm[2], r.compression_mm[0],
                       r.compression_mm[1], r.compression_mm[2]);
  }
}

std::vector<TraversalState> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ConfigError("csv: missing or unexpected header");
  std::vector<TraversalState> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ConfigError(fmt::format("csv line {}: bad field '{}'", lineno, cell));
      }
    }
    if (v.size() != 12) throw ConfigError(fmt::format("csv line {}: expected 12 fields, got {}", lineno, v.size()));
    TraversalState s;
    s.time_s = v[0];
    s.s_mm = v[1];
    s.section = static_cast<std::size_t>(v[2]);
    for (int i = 0; i < 3; ++i) {
      s.track_speed_mm_s[i] = v[3 + i];
      s.track_distance_mm[i] = v[6 + i];
      s.compression_mm[i] = v[9 + i];
    }
    rows.push_back(s);
  }
  return rows;
}

std::string summary_json(const TraversalLog& log, const Traversal& traversal) {
  using nlohmann::ordered_json;
  const auto& net = traversal.network();
  ordered_json j;
  j["mu_deg"] = log.mu_deg;
  j["track_law"] = to_string(log.law);
  j["complete"] = log.complete;
  j["nominal_speed_mm_s"] = log.nominal_speed_mm_s;
  j["total_time_s"] = log.total_time_s();
  j["centerline_length_mm"] = net.total_length();
  j["path_start_mm"] = log.path_start_mm;
  j["path_end_mm"] = log.path_end_mm;
  j["effective_path_mm"] = log.effective_path_mm();
  j["predicted_time_s"] =
      log.nominal_speed_mm_s > 0.0 ? log.effective_path_mm() / log.nominal_speed_mm_s : 0.0;

  // Published timing refers to a 3016.49 mm path at 50.24 mm/s while the published
  // robot path (centerline minus robot length) is 2823.49 mm. Both are carried here.
  ordered_json ref;
  ref["robot_path_mm"] = 2823.49;
  ref["timing_path_mm"] = 3016.49;
  ref["timing_speed_mm_s"] = 50.24;
  ref["total_time_s"] = 60.04;
  ref["note"] =
      "published total time divides a 3016.49 mm path by 50.24 mm/s, inconsistent with its own 2823.49 mm robot "
      "path; this run uses centerline minus robot length";
  j["published_reference"] = ref;

  ordered_json sections = ordered_json::array();
  for (std::size_t i = 0; i < net.sections.size(); ++i) {
    ordered_json s;
    s["index"] = i;
    s["type"] = pipe::is_bend(net.sections[i]) ? "bend" : "straight";
    s["centerline_mm"] = pipe::centerline_length(net.sections[i]);
    s["start_mm"] = net.section_start(i);
    const auto& v = traversal.section_track_speeds(i);
    s["track_speeds_mm_s"] = {v[0], v[1], v[2]};
    sections.push_back(s);
  }
  j["sections"] = sections;

  const auto& fin = log.final_state();
  j["track_distance_mm"] = {fin.track_distance_mm[0], fin.track_distance_mm[1], fin.track_distance_mm[2]};
  if (log.complete) {
    const auto slip = slip_metric(log, net, traversal.orientation());
    j["required_track_distance_mm"] = {slip.required_mm[0], slip.required_mm[1], slip.required_mm[2]};
    j["track_slip_mm"] = {slip.signed_mm[0], slip.signed_mm[1], slip.signed_mm[2]};
  }
  j["asym_tilt_limit_deg"] = asym_tilt_limit_deg(traversal.config());
  return j.dump(2) + "\n";
}

}  // namespace oodsim::traversal
