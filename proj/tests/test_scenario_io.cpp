#include <fstream>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"

#include "json.hpp"

#include "lezopt/cli.hpp"
#include "lezopt/errors.hpp"
#include "lezopt/fixtures.hpp"
#include "lezopt/results.hpp"
#include "lezopt/scenario.hpp"
#include "lezopt/simulate.hpp"

using namespace lezopt;
using nlohmann::json;

namespace {

const std::filesystem::path kFixturePath =
    std::filesystem::path(LEZOPT_SCENARIO_DIR) / "idf_fixture.json";

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("lezopt_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json fixture_json() {
  std::ifstream in(kFixturePath);
  REQUIRE(in);
  return json::parse(in);
}

void write_json(const json& j, const std::filesystem::path& p) {
  std::ofstream out(p);
  REQUIRE(out);
  out << j.dump(2) << "\n";
}

}  // namespace

TEST_CASE("bundled fixture loads with the published schedule and dimensions") {
  const Scenario sc = load_scenario(kFixturePath);
  CHECK(sc.zones == 6);
  CHECK(sc.max_age == 30);
  CHECK(sc.horizon == 25);
  CHECK(sc.base_year == 2025);
  CHECK(sc.initial_ban_age == std::vector<int>{16, 17, 31, 31, 31, 31});
  CHECK(sc.topology.max_tightening == std::vector<int>{4, 3, 3, 2, 2, 1});
  CHECK(sc.initial_thermal_totals ==
        std::vector<double>{1.15e6, 2.09e6, 1.95e6, 0.89e6, 0.43e6, 0.16e6});
  CHECK(sc.provenance.age_distribution_defaulted);

  // The shipped file and the in-code builder must stay in sync.
  CHECK(sc == make_idf_fixture());
}

TEST_CASE("behavior ordering violations name the offending fields") {
  json j = fixture_json();
  j["behavior"]["disposal_baseline"] = 0.95;  // above the banned ratio
  const auto path = temp_dir("bad_behavior") / "scenario.json";
  write_json(j, path);
  CHECK_THROWS_WITH_AS(static_cast<void>(load_scenario(path)),
                       doctest::Contains("baseline_ratio"), ValidationError);
}

TEST_CASE("missing and malformed fields are reported by name") {
  SUBCASE("missing mileage") {
    json j = fixture_json();
    j["exogenous"].erase("mileage_km_per_vehicle");
    const auto path = temp_dir("missing_mileage") / "scenario.json";
    write_json(j, path);
    CHECK_THROWS_WITH_AS(static_cast<void>(load_scenario(path)),
                         doctest::Contains("mileage_km_per_vehicle"), ValidationError);
  }
  SUBCASE("survival outside [0,1]") {
    json j = fixture_json();
    j["exogenous"]["survival"][3] = 1.2;
    const auto path = temp_dir("bad_survival") / "scenario.json";
    write_json(j, path);
    CHECK_THROWS_WITH_AS(static_cast<void>(load_scenario(path)),
                         doctest::Contains("survival"), ValidationError);
  }
  SUBCASE("wrong series length") {
    json j = fixture_json();
    j["exogenous"]["utility_electric"] = {0.0, 1.0};  // needs horizon+1 entries
    const auto path = temp_dir("bad_series") / "scenario.json";
    write_json(j, path);
    CHECK_THROWS_WITH_AS(static_cast<void>(load_scenario(path)),
                         doctest::Contains("utility_electric"), ValidationError);
  }
  SUBCASE("parse error") {
    const auto path = temp_dir("parse_error") / "scenario.json";
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_WITH_AS(static_cast<void>(load_scenario(path)),
                         doctest::Contains("parse error"), ValidationError);
  }
  SUBCASE("zero baseline is accepted") {
    json j = fixture_json();
    j["behavior"]["disposal_baseline"] = 0.0;
    const auto path = temp_dir("zero_baseline") / "scenario.json";
    write_json(j, path);
    CHECK(load_scenario(path).behavior.baseline_ratio == 0.0);
  }
}

TEST_CASE("explicit age distribution is honored, omitted one defaults") {
  json j = fixture_json();
  std::vector<double> weights(31, 1.0);
  j["initial"]["age_distribution"] = weights;
  const auto path = temp_dir("explicit_ages") / "scenario.json";
  write_json(j, path);
  const Scenario sc = load_scenario(path);
  CHECK_FALSE(sc.provenance.age_distribution_defaulted);
  // Uniform weights: every age holds total/31.
  CHECK(sc.initial_stock.stock(kThermal, 0, 0) ==
        doctest::Approx(1.15e6 / 31.0).epsilon(1e-12));

  const Scenario defaulted = load_scenario(kFixturePath);
  CHECK(defaulted.provenance.age_distribution_defaulted);
  REQUIRE(!defaulted.provenance.notes.empty());
}

TEST_CASE("scenario round-trips exactly through save and load") {
  SUBCASE("fixture (defaulted age profile)") {
    const Scenario first = load_scenario(kFixturePath);
    const auto path = temp_dir("roundtrip_fixture") / "scenario.json";
    save_scenario(first, path);
    const Scenario second = load_scenario(path);
    CHECK(first == second);
    CHECK(second.provenance.age_distribution_defaulted);
  }
  SUBCASE("explicit age profile") {
    json j = fixture_json();
    j["initial"]["age_distribution"] = std::vector<double>(31, 0.5);
    const auto dir = temp_dir("roundtrip_explicit");
    write_json(j, dir / "a.json");
    const Scenario first = load_scenario(dir / "a.json");
    save_scenario(first, dir / "b.json");
    const Scenario second = load_scenario(dir / "b.json");
    CHECK(first == second);
  }
}

TEST_CASE("schedule CSV export inverts exactly") {
  const Scenario sc = load_scenario(kFixturePath);
  const auto reference = simulate(sc, no_new_restriction_control(sc));

  ResultsBundle bundle;
  bundle.add_series("reference", reference);
  bundle.schedule = reference.schedule;
  bundle.manifest = {{"test", true}};
  const auto dir = temp_dir("schedule_roundtrip");
  write_results(bundle, dir);

  const ImportedSchedule imported = read_schedule_csv(dir / "schedule.csv");
  CHECK(imported.base_year == sc.base_year);
  CHECK(imported.schedule == reference.schedule);

  // First column reproduces the published initial schedule bit-exactly.
  std::vector<int> initial(sc.zones);
  for (int z = 0; z < sc.zones; ++z) initial[z] = imported.schedule.at(z, 0);
  CHECK(initial == std::vector<int>{16, 17, 31, 31, 31, 31});

  // Re-simulating the control derived from the re-import reproduces the path.
  const ControlSequence derived = control_from_schedule(imported.schedule);
  const auto again = simulate(sc, derived);
  CHECK(again.schedule == reference.schedule);
  CHECK(again.emissions_tco2 == reference.emissions_tco2);
}

TEST_CASE("never-ban schedule rows carry the no-ban marker") {
  const Scenario sc = no_lez_variant(load_scenario(kFixturePath));
  const auto trace = simulate(sc, no_new_restriction_control(sc));
  ResultsBundle bundle;
  bundle.add_series("no_lez", trace);
  bundle.schedule = trace.schedule;
  bundle.manifest = json::object();
  const auto dir = temp_dir("no_ban_marker");
  write_results(bundle, dir);

  std::ifstream in(dir / "schedule.csv");
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "zone,ban_year,oldest_allowed_manufacturing_year,no_ban");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream ss(line);
    std::string zone, year, value, marker;
    std::getline(ss, zone, ',');
    std::getline(ss, year, ',');
    std::getline(ss, value, ',');
    std::getline(ss, marker, ',');
    CHECK(marker == "1");
    CHECK(std::stoi(value) == std::stoi(year) - 31);  // year - (A+1)
  }
  CHECK(rows == sc.zones * (sc.horizon + 1));

  // Cumulative disposals column is identically zero for the no-LEZ world.
  std::ifstream disposals(dir / "disposals.csv");
  std::getline(disposals, header);
  CHECK(header == "year,scenario,cumulative_disposals_Mvehicles");
  while (std::getline(disposals, line)) {
    const auto last_comma = line.rfind(',');
    CHECK(line.substr(last_comma + 1) == "0");
  }
}

TEST_CASE("emissions golden file for the fixture reference run") {
  const Scenario sc = load_scenario(kFixturePath);
  const auto reference = simulate(sc, no_new_restriction_control(sc));
  ResultsBundle bundle;
  bundle.add_series("reference", reference);
  bundle.schedule = reference.schedule;
  bundle.manifest = json::object();
  const auto dir = temp_dir("golden");
  write_results(bundle, dir);

  const auto golden = std::filesystem::path(LEZOPT_GOLDEN_DIR) / "idf_reference_emissions.csv";
  REQUIRE_MESSAGE(std::filesystem::exists(golden),
                  "golden file missing; see README for regeneration");
  CHECK(read_file(dir / "emissions.csv") == read_file(golden));
}

TEST_CASE("format_double round-trips") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    double x = testing::in_range(rng, -1e9, 1e9);
    if (i % 3 == 0) x = testing::in_range(rng, 0.0, 1.0);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.5) == "1.5");
}

TEST_CASE("cli validate and simulate commands") {
  SUBCASE("validate accepts the fixture") {
    RunSpec spec;
    spec.command = Command::Validate;
    spec.scenario_path = kFixturePath;
    CHECK(run(spec) == exit_code::kOk);
  }
  SUBCASE("validate rejects a broken file with exit 1") {
    json j = fixture_json();
    j["behavior"]["disposal_baseline"] = 2.0;
    const auto path = temp_dir("cli_bad") / "scenario.json";
    write_json(j, path);
    RunSpec spec;
    spec.command = Command::Validate;
    spec.scenario_path = path;
    CHECK(run(spec) == exit_code::kValidationFailure);
  }
  SUBCASE("missing scenario file is a usage error") {
    RunSpec spec;
    spec.command = Command::Validate;
    spec.scenario_path = "/nonexistent/scenario.json";
    CHECK(run(spec) == exit_code::kUsage);
  }
  SUBCASE("simulate writes the full result set") {
    RunSpec spec;
    spec.command = Command::Simulate;
    spec.scenario_path = kFixturePath;
    spec.output_dir = temp_dir("cli_simulate");
    CHECK(run(spec) == exit_code::kOk);
    for (const char* name :
         {"emissions.csv", "disposals.csv", "pareto.csv", "schedule.csv", "manifest.json"})
      CHECK(std::filesystem::exists(spec.output_dir / name));
    const json manifest = json::parse(read_file(spec.output_dir / "manifest.json"));
    CHECK(manifest["tool"] == "lezopt");
    CHECK(manifest["scenario"].contains("fnv1a64"));
  }
}
