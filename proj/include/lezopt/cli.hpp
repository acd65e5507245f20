#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "lezopt/ga.hpp"

namespace lezopt {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kValidationFailure = 1;
inline constexpr int kInfeasible = 2;
inline constexpr int kUsage = 64;
}  // namespace exit_code

enum class Command { Simulate, Optimize, Pareto, Verify, Validate };

/// One fully-specified invocation. beta and cap are mutually exclusive.
struct RunSpec {
  Command command = Command::Simulate;
  std::filesystem::path scenario_path;
  std::filesystem::path output_dir = "out";

  std::optional<double> beta;      // optimize
  std::optional<double> cap_tco2;  // optimize
  std::vector<double> betas;       // pareto; empty = default six targets

  GaConfig ga;

  bool no_lez = false;
  bool reference = false;
  std::optional<std::filesystem::path> control_path;

  int verify_seeds = 20;
};

/// Execute one command. Returns a process exit code (see exit_code);
/// infeasible optimizations still write their outputs.
int run(const RunSpec& spec);

}  // namespace lezopt
