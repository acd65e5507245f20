#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lezopt/policy.hpp"
#include "lezopt/simulate.hpp"

#include "json.hpp"

namespace lezopt {

struct ParetoPoint {
  double beta = 0.0;
  double disposals_mvehicles = 0.0;
  double terminal_mtco2 = 0.0;
  bool feasible = false;
};

/// Plot-ready outputs of one run: labeled per-year series (years
/// base_year+1 .. base_year+horizon), at most one exported ban schedule,
/// Pareto points, and the reproducibility manifest.
struct ResultsBundle {
  int base_year = 0;
  int horizon = 0;
  int max_age = 0;

  std::vector<std::string> labels;
  std::vector<std::vector<double>> emissions_mtco2;      // per label, length horizon
  std::vector<std::vector<double>> disposals_mvehicles;  // cumulative, per label

  std::optional<RestrictionSchedule> schedule;
  std::vector<ParetoPoint> pareto;
  nlohmann::json manifest;

  void add_series(const std::string& label, const SimulationTrace& trace);
};

/// Write emissions.csv, disposals.csv, pareto.csv, schedule.csv and
/// manifest.json into the directory (created if needed). CSVs have a header
/// row, dot decimals, UTF-8, LF line endings; files with no content carry
/// the header only.
void write_results(const ResultsBundle& bundle, const std::filesystem::path& dir);

/// Re-import an exported schedule.csv, reconstructing the ban-age matrix
/// exactly (ban age = ban_year - exported manufacturing year).
struct ImportedSchedule {
  int base_year = 0;
  RestrictionSchedule schedule;
};
ImportedSchedule read_schedule_csv(const std::filesystem::path& path);

/// Derive the control steps that reproduce an imported schedule.
ControlSequence control_from_schedule(const RestrictionSchedule& schedule);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

/// FNV-1a 64-bit hash of a file's bytes, hex-encoded (manifest provenance).
std::string file_fnv1a_hex(const std::filesystem::path& path);

}  // namespace lezopt
