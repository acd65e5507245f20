#pragma once

#include <cstdint>
#include <vector>

#include "lezopt/scenario.hpp"
#include "lezopt/simulate.hpp"

namespace lezopt {

struct GaConfig {
  int population_size = 50;
  int generations = 1000;
  double crossover_rate = 0.5;
  double mutation_rate = 0.3;  // per-gene resampling probability
  int tournament_size = 3;
  int elite_count = 1;
  std::uint64_t rng_seed = 1;
  bool parallel = true;  // OpenMP population evaluation; results are
                         // bit-identical to the serial path either way

  void validate() const;
};

/// Terminal emission cap, expressed as a reduction fraction beta against a
/// reference terminal value.
struct EmissionTarget {
  double beta = 0.0;
  double cap_tco2 = 0.0;
};

EmissionTarget target_from_beta(double beta, double reference_terminal_tco2);

/// Objective and constraint values of one control. Ranking is
/// feasibility-first: feasible individuals compare by objective, infeasible
/// ones by violation; a failed simulation ranks worst.
struct Fitness {
  double objective = 0.0;  // cumulative disposals, vehicles
  double violation = 0.0;  // max(0, E(T) - cap), tCO2
  bool valid = true;

  bool feasible() const { return valid && violation == 0.0; }
};

Fitness fitness(const Scenario& scenario, const ControlSequence& control,
                const EmissionTarget& target);

/// Feasibility-first strict ordering with a lexicographic genome tie-break.
bool fitness_better(const Fitness& a, const std::vector<int>& genome_a,
                    const Fitness& b, const std::vector<int>& genome_b);

struct GenerationStats {
  double best_objective = 0.0;
  double best_violation = 0.0;
  double mean_objective = 0.0;
  double mean_violation = 0.0;
};

struct OptimizationOutcome {
  ControlSequence best_control;
  SimulationTrace trace;  // full re-simulation of the best control
  double objective_disposals = 0.0;
  double terminal_emissions_tco2 = 0.0;
  bool feasible = false;
  EmissionTarget target;
  std::uint64_t seed = 0;
  std::vector<GenerationStats> history;  // entry per generation incl. initial
};

/// Solve one terminal-cap problem with the genetic algorithm. Fully
/// reproducible from the seed.
OptimizationOutcome evolve(const Scenario& scenario, const EmissionTarget& target,
                           const GaConfig& config);

/// One independent evolve per target (seeded seed+index after sorting by
/// beta ascending). Per-target infeasibility is reported in the outcome,
/// never aborts the sweep.
std::vector<OptimizationOutcome> pareto_sweep(const Scenario& scenario,
                                              std::vector<EmissionTarget> targets,
                                              const GaConfig& config);

}  // namespace lezopt
