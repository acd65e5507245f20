// Command-line front end: parses flags into a RunSpec and dispatches.
#include <iostream>

#include "CLI11.hpp"

#include "lezopt/cli.hpp"

namespace {

void add_common(CLI::App* cmd, lezopt::RunSpec& spec, bool scenario_required = true) {
  auto* opt = cmd->add_option("--scenario", spec.scenario_path, "Scenario file (JSON)");
  if (scenario_required) opt->required();
  cmd->add_option("--out", spec.output_dir, "Output directory")->capture_default_str();
}

void add_ga_flags(CLI::App* cmd, lezopt::RunSpec& spec) {
  cmd->add_option("--seed", spec.ga.rng_seed, "RNG seed")->capture_default_str();
  cmd->add_option("--pop", spec.ga.population_size, "Population size")->capture_default_str();
  cmd->add_option("--gens", spec.ga.generations, "Generations")->capture_default_str();
  cmd->add_option("--cx", spec.ga.crossover_rate, "Crossover rate")->capture_default_str();
  cmd->add_option("--mut", spec.ga.mutation_rate, "Per-gene mutation rate")
      ->capture_default_str();
  cmd->add_flag("--serial", [&spec](std::int64_t) { spec.ga.parallel = false; },
                "Disable parallel fitness evaluation");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LEZ schedule backcasting: fleet simulation and constrained optimization"};
  app.require_subcommand(1);

  lezopt::RunSpec spec;

  auto* sim = app.add_subcommand("simulate",
                                 "Forward runs (no-LEZ / reference / custom schedule)");
  add_common(sim, spec);
  sim->add_flag("--no-lez", spec.no_lez, "Run the counterfactual without any LEZ");
  sim->add_flag("--reference", spec.reference, "Run the no-new-restriction reference");
  std::string control_path;
  sim->add_option("--control", control_path, "Run a custom schedule (schedule.csv)");

  auto* opt = app.add_subcommand("optimize", "Solve one terminal-cap problem");
  add_common(opt, spec);
  add_ga_flags(opt, spec);
  double beta = -1.0, cap = -1.0;
  opt->add_option("--beta", beta, "Reduction fraction vs reference terminal emissions");
  opt->add_option("--cap", cap, "Explicit terminal cap in tCO2");

  auto* par = app.add_subcommand("pareto", "Sweep the default six reduction targets");
  add_common(par, spec);
  add_ga_flags(par, spec);
  par->add_option("--beta", spec.betas, "Override the target list (repeatable)");

  auto* ver = app.add_subcommand("verify", "Compare the GA against the exhaustive oracle");
  ver->add_option("--seeds", spec.verify_seeds, "Number of GA seeds")->capture_default_str();
  ver->add_option("--seed", spec.ga.rng_seed, "Base RNG seed")->capture_default_str();
  ver->add_option("--pop", spec.ga.population_size, "Population size")->capture_default_str();
  ver->add_option("--gens", spec.ga.generations, "Generations")->capture_default_str();

  auto* val = app.add_subcommand("validate", "Check a scenario file and exit");
  add_common(val, spec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lezopt::exit_code::kUsage;
  }

  if (sim->parsed()) {
    spec.command = lezopt::Command::Simulate;
    if (!control_path.empty()) spec.control_path = control_path;
  } else if (opt->parsed()) {
    spec.command = lezopt::Command::Optimize;
    if (beta >= 0.0) spec.beta = beta;
    if (cap >= 0.0) spec.cap_tco2 = cap;
  } else if (par->parsed()) {
    spec.command = lezopt::Command::Pareto;
  } else if (ver->parsed()) {
    spec.command = lezopt::Command::Verify;
  } else if (val->parsed()) {
    spec.command = lezopt::Command::Validate;
  }

  return lezopt::run(spec);
}
