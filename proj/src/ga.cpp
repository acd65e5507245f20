#include "lezopt/ga.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lezopt/errors.hpp"

namespace lezopt {

void GaConfig::validate() const {
  if (population_size < 2) throw ValidationError("ga.population_size must be >= 2");
  if (generations < 0) throw ValidationError("ga.generations must be >= 0");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
    throw ValidationError("ga.crossover_rate must be in [0, 1]");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
    throw ValidationError("ga.mutation_rate must be in [0, 1]");
  if (tournament_size < 1) throw ValidationError("ga.tournament_size must be >= 1");
  if (elite_count < 0 || elite_count >= population_size)
    throw ValidationError("ga.elite_count must be in [0, population_size)");
}

EmissionTarget target_from_beta(double beta, double reference_terminal_tco2) {
  if (!(beta >= 0.0 && beta < 1.0))
    throw ValidationError("target beta must be in [0, 1)");
  if (!(reference_terminal_tco2 > 0.0))
    throw ValidationError("reference terminal emissions must be > 0");
  return {beta, reference_terminal_tco2 * (1.0 - beta)};
}

Fitness fitness(const Scenario& scenario, const ControlSequence& control,
                const EmissionTarget& target) {
  const SimulationTrace trace = simulate(scenario, control);
  Fitness f;
  f.objective = trace.total_disposals();
  f.violation = std::max(0.0, trace.terminal_emissions_tco2() - target.cap_tco2);
  return f;
}

namespace {

// Ranking class: 0 feasible, 1 infeasible, 2 failed evaluation.
int rank_class(const Fitness& f) {
  if (!f.valid) return 2;
  return f.violation > 0.0 ? 1 : 0;
}

// Deterministic draws derived from raw mt19937_64 output; keeps runs
// reproducible independent of standard-library distribution details.
double rand_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int rand_below(std::mt19937_64& rng, int n) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

struct Individual {
  std::vector<int> genes;
  Fitness fit;
};

struct GenomeLayout {
  int zones = 0;
  int horizon = 0;
  std::vector<int> max_step;  // per zone

  int gene_count() const { return zones * horizon; }
  int zone_of(int gene) const { return gene / horizon; }
  int random_gene(std::mt19937_64& rng, int zone) const {
    return -1 + rand_below(rng, max_step[zone] + 2);
  }
};

ControlSequence to_control(const GenomeLayout& layout, const std::vector<int>& genes) {
  ControlSequence c(layout.zones, layout.horizon);
  c.steps = genes;
  return c;
}

Fitness safe_fitness(const Scenario& scenario, const GenomeLayout& layout,
                     const std::vector<int>& genes, const EmissionTarget& target) {
  try {
    return fitness(scenario, to_control(layout, genes), target);
  } catch (const std::exception&) {
    Fitness f;
    f.valid = false;
    f.objective = std::numeric_limits<double>::infinity();
    f.violation = std::numeric_limits<double>::infinity();
    return f;
  }
}

void evaluate_population(std::vector<Individual>& pop, const Scenario& scenario,
                         const GenomeLayout& layout, const EmissionTarget& target,
                         bool parallel) {
  const int n = static_cast<int>(pop.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#else
  (void)parallel;
#endif
  for (int i = 0; i < n; ++i)
    pop[i].fit = safe_fitness(scenario, layout, pop[i].genes, target);
}

void repair_in_place(std::vector<int>& genes, const GenomeLayout& layout,
                     const Scenario& scenario) {
  ControlSequence c = to_control(layout, genes);
  genes = repair_control(c, scenario.initial_ban_age, scenario.topology, scenario.max_age).steps;
}

GenerationStats stats_of(const std::vector<Individual>& pop, const Individual& gen_best) {
  GenerationStats s;
  s.best_objective = gen_best.fit.objective;
  s.best_violation = gen_best.fit.violation;
  double obj = 0.0, viol = 0.0;
  for (const auto& ind : pop) {
    obj += ind.fit.objective;
    viol += ind.fit.violation;
  }
  s.mean_objective = obj / static_cast<double>(pop.size());
  s.mean_violation = viol / static_cast<double>(pop.size());
  return s;
}

}  // namespace

bool fitness_better(const Fitness& a, const std::vector<int>& genome_a,
                    const Fitness& b, const std::vector<int>& genome_b) {
  const int ca = rank_class(a), cb = rank_class(b);
  if (ca != cb) return ca < cb;
  if (ca == 0) {
    if (a.objective != b.objective) return a.objective < b.objective;
  } else if (ca == 1) {
    if (a.violation != b.violation) return a.violation < b.violation;
    if (a.objective != b.objective) return a.objective < b.objective;
  }
  return std::lexicographical_compare(genome_a.begin(), genome_a.end(), genome_b.begin(),
                                      genome_b.end());
}

OptimizationOutcome evolve(const Scenario& scenario, const EmissionTarget& target,
                           const GaConfig& config) {
  config.validate();
  scenario.validate();

  GenomeLayout layout{scenario.zones, scenario.horizon, scenario.topology.max_tightening};
  const int genes = layout.gene_count();
  std::mt19937_64 rng(config.rng_seed);

  auto better = [](const Individual& a, const Individual& b) {
    return fitness_better(a.fit, a.genes, b.fit, b.genes);
  };

  // Half the population close to the known-feasible relaxation control
  // (first one exactly on it), half uniform random.
  std::vector<Individual> pop(config.population_size);
  const int near_reference = config.population_size / 2;
  for (int i = 0; i < config.population_size; ++i) {
    auto& g = pop[i].genes;
    g.assign(genes, -1);
    if (i > 0 && i < near_reference) {
      for (int k = 0; k < genes; ++k)
        if (rand_unit(rng) < 0.1) g[k] = layout.random_gene(rng, layout.zone_of(k));
    } else if (i >= near_reference) {
      for (int k = 0; k < genes; ++k) g[k] = layout.random_gene(rng, layout.zone_of(k));
    }
    repair_in_place(g, layout, scenario);
  }
  evaluate_population(pop, scenario, layout, target, config.parallel);

  auto best_index = [&](const std::vector<Individual>& p) {
    int bi = 0;
    for (int i = 1; i < static_cast<int>(p.size()); ++i)
      if (better(p[i], p[bi])) bi = i;
    return bi;
  };

  Individual best = pop[best_index(pop)];
  std::vector<GenerationStats> history;
  history.reserve(config.generations + 1);
  history.push_back(stats_of(pop, best));

  auto tournament = [&](const std::vector<Individual>& p) -> const Individual& {
    int bi = rand_below(rng, static_cast<int>(p.size()));
    for (int k = 1; k < config.tournament_size; ++k) {
      const int ci = rand_below(rng, static_cast<int>(p.size()));
      if (better(p[ci], p[bi])) bi = ci;
    }
    return p[bi];
  };

  std::vector<Individual> next;
  next.reserve(config.population_size);
  for (int gen = 0; gen < config.generations; ++gen) {
    next.clear();

    if (config.elite_count > 0) {
      std::vector<int> order(pop.size());
      for (std::size_t i = 0; i < pop.size(); ++i) order[i] = static_cast<int>(i);
      std::partial_sort(order.begin(), order.begin() + config.elite_count, order.end(),
                        [&](int a, int b) { return better(pop[a], pop[b]); });
      for (int e = 0; e < config.elite_count; ++e) next.push_back(pop[order[e]]);
    }

    while (static_cast<int>(next.size()) < config.population_size) {
      Individual child;
      child.genes = tournament(pop).genes;
      if (rand_unit(rng) < config.crossover_rate) {
        const Individual& other = tournament(pop);
        for (int k = 0; k < genes; ++k)
          if (rand_unit(rng) < 0.5) child.genes[k] = other.genes[k];
      }
      for (int k = 0; k < genes; ++k)
        if (rand_unit(rng) < config.mutation_rate)
          child.genes[k] = layout.random_gene(rng, layout.zone_of(k));
      repair_in_place(child.genes, layout, scenario);
      next.push_back(std::move(child));
    }

    evaluate_population(next, scenario, layout, target, config.parallel);
    pop.swap(next);

    const Individual& gen_best = pop[best_index(pop)];
    if (better(gen_best, best)) best = gen_best;
    history.push_back(stats_of(pop, gen_best));  // generation best, not best-ever
  }

  OptimizationOutcome out;
  out.best_control = to_control(layout, best.genes);
  out.trace = simulate(scenario, out.best_control, {.record_tensors = true});
  out.objective_disposals = out.trace.total_disposals();
  out.terminal_emissions_tco2 = out.trace.terminal_emissions_tco2();
  out.feasible = best.fit.valid && best.fit.violation == 0.0;
  out.target = target;
  out.seed = config.rng_seed;
  out.history = std::move(history);
  return out;
}

std::vector<OptimizationOutcome> pareto_sweep(const Scenario& scenario,
                                              std::vector<EmissionTarget> targets,
                                              const GaConfig& config) {
  std::sort(targets.begin(), targets.end(),
            [](const EmissionTarget& a, const EmissionTarget& b) { return a.beta < b.beta; });
  for (std::size_t i = 1; i < targets.size(); ++i)
    if (targets[i].beta == targets[i - 1].beta && targets[i].cap_tco2 == targets[i - 1].cap_tco2)
      throw ValidationError("pareto targets must be distinct");

  std::vector<OptimizationOutcome> outcomes;
  outcomes.reserve(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    GaConfig cfg = config;
    cfg.rng_seed = config.rng_seed + static_cast<std::uint64_t>(i);
    outcomes.push_back(evolve(scenario, targets[i], cfg));
  }

  // Pool the discovered controls and give every target the best feasible one.
  // A control feasible under a tighter cap is feasible under every looser
  // cap with the same objective, so this never worsens a target and the
  // emitted front is monotone in beta even when single runs land near-tied.
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const OptimizationOutcome* pick = nullptr;
    for (const auto& donor : outcomes) {
      if (donor.terminal_emissions_tco2 > targets[i].cap_tco2) continue;
      if (!pick || donor.objective_disposals < pick->objective_disposals ||
          (donor.objective_disposals == pick->objective_disposals &&
           donor.best_control.steps < pick->best_control.steps))
        pick = &donor;
    }
    if (pick && pick != &outcomes[i] &&
        (!outcomes[i].feasible || pick->objective_disposals < outcomes[i].objective_disposals ||
         (pick->objective_disposals == outcomes[i].objective_disposals &&
          pick->best_control.steps < outcomes[i].best_control.steps))) {
      OptimizationOutcome adopted = outcomes[i];
      adopted.best_control = pick->best_control;
      adopted.trace = pick->trace;
      adopted.objective_disposals = pick->objective_disposals;
      adopted.terminal_emissions_tco2 = pick->terminal_emissions_tco2;
      adopted.feasible = true;
      outcomes[i] = std::move(adopted);
    }
  }
  return outcomes;
}

}  // namespace lezopt
