#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"

#include "lezopt/cli.hpp"
#include "lezopt/results.hpp"
#include "lezopt/scenario.hpp"
#include "lezopt/simulate.hpp"

using namespace lezopt;

namespace {

const std::filesystem::path kFixturePath =
    std::filesystem::path(LEZOPT_SCENARIO_DIR) / "idf_fixture.json";

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("lezopt_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<std::string> read_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(LEZOPT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

GaConfig quick_ga(std::uint64_t seed) {
  GaConfig ga;
  ga.population_size = 12;
  ga.generations = 25;
  ga.rng_seed = seed;
  return ga;
}

}  // namespace

TEST_CASE("pareto command writes the six default targets") {
  RunSpec spec;
  spec.command = Command::Pareto;
  spec.scenario_path = kFixturePath;
  spec.output_dir = temp_dir("pareto");
  spec.ga = quick_ga(11);
  const int code = run(spec);
  CHECK((code == exit_code::kOk || code == exit_code::kInfeasible));

  const auto lines = read_lines(spec.output_dir / "pareto.csv");
  REQUIRE(lines.size() == 7);  // header + six targets
  CHECK(lines[0] == "beta,R_Mvehicles,E_T_MtCO2,feasible");
  const double betas[6] = {0.35, 0.45, 0.55, 0.65, 0.75, 0.85};
  for (int i = 0; i < 6; ++i) {
    std::istringstream ss(lines[i + 1]);
    std::string beta;
    std::getline(ss, beta, ',');
    CHECK(std::stod(beta) == doctest::Approx(betas[i]));
  }
  // emissions.csv carries the reference plus one series per target
  const auto emissions = read_lines(spec.output_dir / "emissions.csv");
  CHECK(emissions.size() == 1 + 7 * 25);
}

TEST_CASE("optimize with an unmeetable cap exits 2 but still writes outputs") {
  RunSpec spec;
  spec.command = Command::Optimize;
  spec.scenario_path = kFixturePath;
  spec.output_dir = temp_dir("infeasible");
  spec.ga = quick_ga(3);
  spec.cap_tco2 = 1.0;  // one tonne: far below anything reachable
  CHECK(run(spec) == exit_code::kInfeasible);
  CHECK(std::filesystem::exists(spec.output_dir / "pareto.csv"));
  const auto lines = read_lines(spec.output_dir / "pareto.csv");
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].back() == '0');  // feasible flag cleared
}

TEST_CASE("beta and cap are mutually exclusive") {
  RunSpec spec;
  spec.command = Command::Optimize;
  spec.scenario_path = kFixturePath;
  spec.output_dir = temp_dir("exclusive");
  spec.beta = 0.5;
  spec.cap_tco2 = 1000.0;
  CHECK(run(spec) == exit_code::kUsage);
}

TEST_CASE("simulate --no-lez emits an all-zero disposal series") {
  RunSpec spec;
  spec.command = Command::Simulate;
  spec.scenario_path = kFixturePath;
  spec.output_dir = temp_dir("nolez");
  spec.no_lez = true;
  CHECK(run(spec) == exit_code::kOk);
  for (const auto& line : read_lines(spec.output_dir / "disposals.csv")) {
    if (line.rfind("year", 0) == 0) continue;
    CHECK(line.substr(line.rfind(',') + 1) == "0");
    CHECK(line.find("no_lez") != std::string::npos);
  }
}

TEST_CASE("simulate --control replays an exported schedule") {
  const auto dir = temp_dir("control");

  RunSpec ref;
  ref.command = Command::Simulate;
  ref.scenario_path = kFixturePath;
  ref.output_dir = dir / "ref";
  ref.reference = true;
  REQUIRE(run(ref) == exit_code::kOk);

  RunSpec replay;
  replay.command = Command::Simulate;
  replay.scenario_path = kFixturePath;
  replay.output_dir = dir / "replay";
  replay.control_path = ref.output_dir / "schedule.csv";
  REQUIRE(run(replay) == exit_code::kOk);

  // The replayed control reproduces the reference series under its own label.
  const auto ref_lines = read_lines(ref.output_dir / "emissions.csv");
  const auto replay_lines = read_lines(replay.output_dir / "emissions.csv");
  REQUIRE(ref_lines.size() == replay_lines.size());
  for (std::size_t i = 1; i < ref_lines.size(); ++i) {
    std::string expect = ref_lines[i];
    const auto pos = expect.find(",reference,");
    REQUIRE(pos != std::string::npos);
    expect.replace(pos, 11, ",control,");
    CHECK(replay_lines[i] == expect);
  }
  // And the re-exported schedule is byte-identical.
  std::ifstream a(ref.output_dir / "schedule.csv"), b(replay.output_dir / "schedule.csv");
  std::ostringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("verify command via the run entry point") {
  RunSpec spec;
  spec.command = Command::Verify;
  spec.verify_seeds = 2;
  CHECK(run(spec) == exit_code::kOk);
}

TEST_CASE("binary exit codes") {
  SUBCASE("unknown flag is a usage error") {
    CHECK(run_binary("simulate --scenario x --bogus-flag") == exit_code::kUsage);
  }
  SUBCASE("missing subcommand is a usage error") {
    CHECK(run_binary("") == exit_code::kUsage);
  }
  SUBCASE("missing scenario file is a usage error") {
    CHECK(run_binary("validate --scenario /does/not/exist.json") == exit_code::kUsage);
  }
  SUBCASE("validate on the fixture succeeds") {
    CHECK(run_binary("validate --scenario " + kFixturePath.string()) == exit_code::kOk);
  }
  SUBCASE("help exits cleanly") {
    CHECK(run_binary("--help") == exit_code::kOk);
  }
}
