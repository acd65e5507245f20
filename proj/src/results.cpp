#include "lezopt/results.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "lezopt/errors.hpp"

namespace lezopt {

void ResultsBundle::add_series(const std::string& label, const SimulationTrace& trace) {
  if (labels.empty()) {
    base_year = trace.base_year;
    horizon = trace.horizon;
    max_age = trace.max_age;
  } else if (trace.base_year != base_year || trace.horizon != horizon) {
    throw StructuralError("results: series time axes do not match");
  }
  labels.push_back(label);
  std::vector<double> e(trace.horizon), d(trace.horizon);
  for (int t = 1; t <= trace.horizon; ++t) {
    e[t - 1] = trace.emissions_tco2[t] / 1e6;           // t -> Mt
    d[t - 1] = trace.disposals_cumulative[t] / 1e6;     // vehicles -> Mvehicles
  }
  emissions_mtco2.push_back(std::move(e));
  disposals_mvehicles.push_back(std::move(d));
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw StructuralError("format_double: conversion failed");
  return std::string(buf, ptr);
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw ValidationError("results: cannot write " + path.string());
  return out;
}

}  // namespace

void write_results(const ResultsBundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  {
    auto out = open_output(dir / "emissions.csv");
    out << "year,scenario,emissions_MtCO2\n";
    for (std::size_t s = 0; s < bundle.labels.size(); ++s)
      for (int t = 0; t < bundle.horizon; ++t)
        out << (bundle.base_year + 1 + t) << ',' << bundle.labels[s] << ','
            << format_double(bundle.emissions_mtco2[s][t]) << '\n';
  }
  {
    auto out = open_output(dir / "disposals.csv");
    out << "year,scenario,cumulative_disposals_Mvehicles\n";
    for (std::size_t s = 0; s < bundle.labels.size(); ++s)
      for (int t = 0; t < bundle.horizon; ++t)
        out << (bundle.base_year + 1 + t) << ',' << bundle.labels[s] << ','
            << format_double(bundle.disposals_mvehicles[s][t]) << '\n';
  }
  {
    auto out = open_output(dir / "pareto.csv");
    out << "beta,R_Mvehicles,E_T_MtCO2,feasible\n";
    for (const auto& p : bundle.pareto)
      out << format_double(p.beta) << ',' << format_double(p.disposals_mvehicles) << ','
          << format_double(p.terminal_mtco2) << ',' << (p.feasible ? 1 : 0) << '\n';
  }
  {
    auto out = open_output(dir / "schedule.csv");
    out << "zone,ban_year,oldest_allowed_manufacturing_year,no_ban\n";
    if (bundle.schedule) {
      const auto& sched = *bundle.schedule;
      const int no_ban = bundle.max_age + 1;
      for (int z = 0; z < sched.zones; ++z)
        for (int t = 0; t <= sched.horizon; ++t) {
          const int year = bundle.base_year + t;
          const int age = sched.at(z, t);
          out << (z + 1) << ',' << year << ',' << (year - age) << ','
              << (age == no_ban ? 1 : 0) << '\n';
        }
    }
  }
  {
    auto out = open_output(dir / "manifest.json");
    out << bundle.manifest.dump(2) << '\n';
  }
}

ImportedSchedule read_schedule_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("schedule: cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line))
    throw ValidationError("schedule: empty file " + path.string());
  if (line == "zone,ban_year,oldest_allowed_manufacturing_year,no_ban" ||
      line == "zone,ban_year,oldest_allowed_manufacturing_year") {
    // accepted headers
  } else {
    throw ValidationError("schedule: unexpected header '" + line + "'");
  }

  struct Row {
    int zone, year, age;
  };
  std::vector<Row> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() < 3) {
      std::ostringstream os;
      os << "schedule: line " << line_no << ": expected at least 3 fields";
      throw ValidationError(os.str());
    }
    try {
      const int zone = std::stoi(fields[0]);
      const int year = std::stoi(fields[1]);
      const int value = std::stoi(fields[2]);
      rows.push_back({zone, year, year - value});  // ban age = ban_year - exported year
    } catch (const std::exception&) {
      std::ostringstream os;
      os << "schedule: line " << line_no << ": malformed integer";
      throw ValidationError(os.str());
    }
  }
  if (rows.empty()) throw ValidationError("schedule: no rows in " + path.string());

  int zmin = rows[0].zone, zmax = rows[0].zone, ymin = rows[0].year, ymax = rows[0].year;
  for (const auto& r : rows) {
    zmin = std::min(zmin, r.zone);
    zmax = std::max(zmax, r.zone);
    ymin = std::min(ymin, r.year);
    ymax = std::max(ymax, r.year);
  }
  if (zmin != 1) throw ValidationError("schedule: zones must start at 1");

  ImportedSchedule imported;
  imported.base_year = ymin;
  imported.schedule = RestrictionSchedule(zmax, ymax - ymin);
  std::vector<char> filled(static_cast<std::size_t>(zmax) * (ymax - ymin + 1), 0);
  for (const auto& r : rows) {
    const std::size_t slot =
        static_cast<std::size_t>(r.zone - 1) * (ymax - ymin + 1) + (r.year - ymin);
    if (filled[slot]) throw ValidationError("schedule: duplicate (zone, year) row");
    filled[slot] = 1;
    imported.schedule.at(r.zone - 1, r.year - ymin) = r.age;
  }
  for (char f : filled)
    if (!f) throw ValidationError("schedule: missing (zone, year) rows; grid must be complete");
  return imported;
}

ControlSequence control_from_schedule(const RestrictionSchedule& schedule) {
  ControlSequence control(schedule.zones, schedule.horizon);
  for (int z = 0; z < schedule.zones; ++z)
    for (int t = 1; t <= schedule.horizon; ++t)
      control.at(z, t) = schedule.at(z, t - 1) - schedule.at(z, t);
  return control;
}

std::string file_fnv1a_hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot hash missing file " + path.string());
  std::uint64_t h = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace lezopt
