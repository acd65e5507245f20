#include "lezopt/cli.hpp"

#include <iostream>

#include "json.hpp"

#include "lezopt/errors.hpp"
#include "lezopt/fixtures.hpp"
#include "lezopt/oracle.hpp"
#include "lezopt/results.hpp"
#include "lezopt/simulate.hpp"

namespace lezopt {

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";
const std::vector<double> kDefaultBetas = {0.35, 0.45, 0.55, 0.65, 0.75, 0.85};

json ga_to_json(const GaConfig& ga) {
  return {{"population_size", ga.population_size}, {"generations", ga.generations},
          {"crossover_rate", ga.crossover_rate},   {"mutation_rate", ga.mutation_rate},
          {"tournament_size", ga.tournament_size}, {"elite_count", ga.elite_count},
          {"rng_seed", ga.rng_seed},               {"parallel", ga.parallel}};
}

json base_manifest(const RunSpec& spec, const char* command) {
  json m;
  m["tool"] = "lezopt";
  m["version"] = kToolVersion;
  m["command"] = command;
  if (!spec.scenario_path.empty()) {
    m["scenario"] = {{"path", spec.scenario_path.string()},
                     {"fnv1a64", file_fnv1a_hex(spec.scenario_path)}};
  }
  return m;
}

std::string label_for_target(std::size_t index) { return "T" + std::to_string(index + 1); }

int run_simulate(const RunSpec& spec) {
  const Scenario scenario = load_scenario(spec.scenario_path);

  const bool explicit_choice = spec.no_lez || spec.reference || spec.control_path.has_value();
  const bool want_no_lez = spec.no_lez || !explicit_choice;
  const bool want_reference = spec.reference || !explicit_choice;

  ResultsBundle bundle;
  json runs = json::array();

  // schedule.csv carries one run: explicit control > reference > no_lez.
  const std::string exported = spec.control_path ? "control"
                               : want_reference  ? "reference"
                                                 : "no_lez";

  if (want_no_lez) {
    const Scenario counterfactual = no_lez_variant(scenario);
    const auto trace =
        simulate(counterfactual, no_new_restriction_control(counterfactual));
    bundle.add_series("no_lez", trace);
    if (exported == "no_lez") bundle.schedule = trace.schedule;
    runs.push_back({{"label", "no_lez"}, {"schedule_exported", exported == "no_lez"}});
  }
  if (want_reference) {
    const auto trace = simulate(scenario, no_new_restriction_control(scenario));
    bundle.add_series("reference", trace);
    if (exported == "reference") bundle.schedule = trace.schedule;
    runs.push_back({{"label", "reference"}, {"schedule_exported", exported == "reference"}});
  }
  if (spec.control_path) {
    const ImportedSchedule imported = read_schedule_csv(*spec.control_path);
    if (imported.base_year != scenario.base_year ||
        imported.schedule.zones != scenario.zones ||
        imported.schedule.horizon != scenario.horizon)
      throw ValidationError("control schedule axes do not match the scenario");
    const ControlSequence control = control_from_schedule(imported.schedule);
    const auto report = validate_control(control, scenario.initial_ban_age,
                                         scenario.topology, scenario.max_age);
    if (!report.feasible()) {
      std::cerr << "control schedule infeasible:\n";
      for (const auto& v : report.violations) std::cerr << "  " << v.describe() << "\n";
      return exit_code::kValidationFailure;
    }
    const auto trace = simulate(scenario, control);
    bundle.add_series("control", trace);
    bundle.schedule = trace.schedule;
    runs.push_back({{"label", "control"},
                    {"schedule_exported", true},
                    {"control_path", spec.control_path->string()}});
  }

  bundle.manifest = base_manifest(spec, "simulate");
  bundle.manifest["runs"] = runs;
  write_results(bundle, spec.output_dir);
  std::cout << "simulate: wrote " << bundle.labels.size() << " series to "
            << spec.output_dir.string() << "\n";
  return exit_code::kOk;
}

int run_optimize(const RunSpec& spec) {
  const Scenario scenario = load_scenario(spec.scenario_path);
  const auto reference = simulate(scenario, no_new_restriction_control(scenario));

  EmissionTarget target;
  if (spec.cap_tco2) {
    target.cap_tco2 = *spec.cap_tco2;
    target.beta = 1.0 - *spec.cap_tco2 / reference.terminal_emissions_tco2();
  } else {
    target = target_from_beta(spec.beta.value_or(0.35), reference.terminal_emissions_tco2());
  }

  const OptimizationOutcome outcome = evolve(scenario, target, spec.ga);

  ResultsBundle bundle;
  bundle.add_series("reference", reference);
  bundle.add_series("optimized", outcome.trace);
  bundle.schedule = outcome.trace.schedule;
  bundle.pareto.push_back({target.beta, outcome.objective_disposals / 1e6,
                           outcome.terminal_emissions_tco2 / 1e6, outcome.feasible});
  bundle.manifest = base_manifest(spec, "optimize");
  bundle.manifest["ga"] = ga_to_json(spec.ga);
  bundle.manifest["target"] = {{"beta", target.beta}, {"cap_tco2", target.cap_tco2}};
  bundle.manifest["feasible"] = outcome.feasible;
  write_results(bundle, spec.output_dir);

  std::cout << "optimize: R = " << format_double(outcome.objective_disposals)
            << " vehicles, E(T) = " << format_double(outcome.terminal_emissions_tco2)
            << " tCO2, " << (outcome.feasible ? "feasible" : "INFEASIBLE") << "\n";
  return outcome.feasible ? exit_code::kOk : exit_code::kInfeasible;
}

int run_pareto(const RunSpec& spec) {
  const Scenario scenario = load_scenario(spec.scenario_path);
  const auto reference = simulate(scenario, no_new_restriction_control(scenario));

  const std::vector<double>& betas = spec.betas.empty() ? kDefaultBetas : spec.betas;
  std::vector<EmissionTarget> targets;
  targets.reserve(betas.size());
  for (double beta : betas)
    targets.push_back(target_from_beta(beta, reference.terminal_emissions_tco2()));

  const auto outcomes = pareto_sweep(scenario, targets, spec.ga);

  ResultsBundle bundle;
  bundle.add_series("reference", reference);
  bool all_feasible = true;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& out = outcomes[i];
    bundle.add_series(label_for_target(i), out.trace);
    bundle.pareto.push_back({out.target.beta, out.objective_disposals / 1e6,
                             out.terminal_emissions_tco2 / 1e6, out.feasible});
    all_feasible = all_feasible && out.feasible;
    // Export the most ambitious achieved schedule.
    if (out.feasible || !bundle.schedule) bundle.schedule = out.trace.schedule;
  }
  bundle.manifest = base_manifest(spec, "pareto");
  bundle.manifest["ga"] = ga_to_json(spec.ga);
  bundle.manifest["betas"] = betas;
  write_results(bundle, spec.output_dir);

  for (const auto& out : outcomes)
    std::cout << "beta " << format_double(out.target.beta) << ": R = "
              << format_double(out.objective_disposals) << " vehicles, E(T) = "
              << format_double(out.terminal_emissions_tco2) << " tCO2, "
              << (out.feasible ? "feasible" : "INFEASIBLE") << "\n";
  return all_feasible ? exit_code::kOk : exit_code::kInfeasible;
}

int run_verify(const RunSpec& spec) {
  struct Case {
    std::string name;
    TinyInstance instance;
    EmissionTarget target;
  };
  const std::vector<Case> cases = {
      {"tiny_two_zone", tiny_two_zone_instance(), tiny_two_zone_target()},
      {"tiny_single_zone", tiny_single_zone_instance(), tiny_single_zone_target()},
  };

  bool all_passed = true;
  for (const auto& c : cases) {
    const auto report =
        run_oracle_verification(c.name, c.instance, c.target, spec.ga, spec.verify_seeds);
    std::cout << c.name << ": GA matched oracle " << report.matched << "/" << report.seeds
              << " seeds, feasible " << report.feasible_runs << "/" << report.seeds
              << (report.oracle_feasible ? "" : " (oracle infeasible)") << " -> "
              << (report.passed() ? "PASS" : "FAIL") << "\n";
    all_passed = all_passed && report.passed();
  }
  return all_passed ? exit_code::kOk : exit_code::kValidationFailure;
}

int run_validate(const RunSpec& spec) {
  const Scenario scenario = load_scenario(spec.scenario_path);
  std::cout << "scenario '" << scenario.name << "' OK: zones=" << scenario.zones
            << " max_age=" << scenario.max_age << " years=" << scenario.horizon
            << " base_year=" << scenario.base_year << "\n";
  for (const auto& note : scenario.provenance.notes) std::cout << "  note: " << note << "\n";
  return exit_code::kOk;
}

}  // namespace

int run(const RunSpec& spec) {
  const bool needs_scenario =
      spec.command != Command::Verify;
  if (needs_scenario) {
    if (spec.scenario_path.empty()) {
      std::cerr << "error: --scenario is required\n";
      return exit_code::kUsage;
    }
    if (!std::filesystem::exists(spec.scenario_path)) {
      std::cerr << "error: scenario file not found: " << spec.scenario_path.string() << "\n";
      return exit_code::kUsage;
    }
  }
  if (spec.beta && spec.cap_tco2) {
    std::cerr << "error: --beta and --cap are mutually exclusive\n";
    return exit_code::kUsage;
  }

  try {
    switch (spec.command) {
      case Command::Simulate:
        return run_simulate(spec);
      case Command::Optimize:
        return run_optimize(spec);
      case Command::Pareto:
        return run_pareto(spec);
      case Command::Verify:
        return run_verify(spec);
      case Command::Validate:
        return run_validate(spec);
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return exit_code::kValidationFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::kValidationFailure;
  }
  return exit_code::kUsage;
}

}  // namespace lezopt
