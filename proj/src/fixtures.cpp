#include "lezopt/fixtures.hpp"

#include <cmath>

#include "lezopt/simulate.hpp"

namespace lezopt {

namespace {

// Chain of concentric rings: ring i touches rings i-1 and i+1.
ZoneTopology ring_topology(int zones, std::vector<int> max_tightening) {
  ZoneTopology topo;
  topo.zone_count = zones;
  topo.neighbors.resize(zones);
  for (int z = 0; z < zones; ++z) {
    if (z > 0) topo.neighbors[z].push_back(z - 1);
    if (z + 1 < zones) topo.neighbors[z].push_back(z + 1);
  }
  topo.max_tightening = std::move(max_tightening);
  return topo;
}

Matrix constant_rows(int rows, int cols, const std::vector<double>& row_value) {
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = row_value[r];
  return m;
}

}  // namespace

Scenario make_idf_fixture() {
  Scenario sc;
  sc.name = "idf_fixture";
  sc.base_year = 2025;
  sc.horizon = 25;
  sc.max_age = 30;
  sc.zones = 6;
  sc.topology = ring_topology(6, {4, 3, 3, 2, 2, 1});
  sc.behavior = BehaviorParams{0.9, 0.05, 0.2, 0.6};
  sc.initial_ban_age = {16, 17, 31, 31, 31, 31};

  const int years = sc.horizon + 1;
  const double mileage = 11000.0;

  sc.exogenous.survival.assign(sc.max_age + 1, 1.0);
  for (int a = 1; a <= sc.max_age; ++a)
    sc.exogenous.survival[a] = a <= 10 ? 0.985 : 0.985 - 0.185 * (a - 10) / 20.0;

  sc.exogenous.mileage.assign(years, mileage);
  sc.exogenous.utility_thermal.assign(years, 0.0);
  sc.exogenous.utility_electric.resize(years);
  for (int t = 0; t < years; ++t)
    sc.exogenous.utility_electric[t] = -1.8 + 3.2 * t / 25.0;
  sc.exogenous.logit_scale = 1.0;

  // Vintage-driven factors: newer manufacturing years emit less.
  sc.exogenous.emission_factor = Matrix(sc.max_age + 1, years);
  for (int a = 0; a <= sc.max_age; ++a)
    for (int t = 0; t < years; ++t) {
      const int vintage = sc.base_year + t - a;
      const int improvement = std::max(0, vintage - 1995);
      sc.exogenous.emission_factor(a, t) = 185.0 * std::pow(0.985, improvement);
    }

  sc.initial_thermal_totals = {1.15e6, 2.09e6, 1.95e6, 0.89e6, 0.43e6, 0.16e6};
  sc.initial_electric_totals = {8990.0, 16310.0, 15180.0, 6950.0, 3370.0, 1230.0};
  sc.initial_age_profile = default_age_profile(sc.exogenous.survival, sc.max_age);
  sc.provenance.age_distribution_defaulted = true;
  sc.rebuild_initial_stock();

  sc.exogenous.demand = Matrix(sc.zones, years);
  for (int z = 0; z < sc.zones; ++z) {
    const double base =
        mileage * (sc.initial_thermal_totals[z] + sc.initial_electric_totals[z]);
    for (int t = 0; t < years; ++t)
      sc.exogenous.demand(z, t) = base * std::pow(1.004, t);
  }

  sc.validate();
  return sc;
}

TinyInstance tiny_two_zone_instance() {
  Scenario sc;
  sc.name = "tiny_two_zone";
  sc.base_year = 2025;
  sc.horizon = 4;
  sc.max_age = 5;
  sc.zones = 2;
  sc.topology = ring_topology(2, {2, 1});
  sc.behavior = BehaviorParams{0.9, 0.0, 0.2, 0.6};  // zero baseline: no ban, no disposal
  sc.initial_ban_age = {4, 6};

  const int years = sc.horizon + 1;
  sc.exogenous.survival = {1.0, 0.95, 0.9, 0.85, 0.8, 0.7};
  sc.exogenous.mileage.assign(years, 10000.0);
  sc.exogenous.utility_thermal.assign(years, 0.0);
  sc.exogenous.utility_electric.assign(years, 0.0);
  sc.exogenous.logit_scale = 1.0;
  sc.exogenous.emission_factor =
      constant_rows(sc.max_age + 1, years, {100.0, 120.0, 140.0, 160.0, 180.0, 200.0});

  sc.initial_thermal_totals = {5000.0, 8000.0};
  sc.initial_electric_totals = {500.0, 800.0};
  sc.initial_age_profile = default_age_profile(sc.exogenous.survival, sc.max_age);
  sc.provenance.age_distribution_defaulted = true;
  sc.rebuild_initial_stock();

  sc.exogenous.demand = Matrix(sc.zones, years);
  for (int z = 0; z < sc.zones; ++z) {
    const double base = 10000.0 * (sc.initial_thermal_totals[z] + sc.initial_electric_totals[z]);
    for (int t = 0; t < years; ++t) sc.exogenous.demand(z, t) = base;
  }

  sc.validate();
  return {sc};
}

EmissionTarget tiny_two_zone_target() {
  const TinyInstance inst = tiny_two_zone_instance();
  const auto reference =
      simulate(inst.scenario, no_new_restriction_control(inst.scenario));
  return target_from_beta(0.25, reference.terminal_emissions_tco2());
}

TinyInstance tiny_single_zone_instance() {
  Scenario sc;
  sc.name = "tiny_single_zone";
  sc.base_year = 2025;
  sc.horizon = 3;
  sc.max_age = 4;
  sc.zones = 1;
  sc.topology = ring_topology(1, {3});
  sc.behavior = BehaviorParams{0.9, 0.0, 0.2, 0.6};
  sc.initial_ban_age = {5};

  const int years = sc.horizon + 1;
  sc.exogenous.survival = {1.0, 0.9, 0.85, 0.8, 0.75};
  sc.exogenous.mileage.assign(years, 12000.0);
  sc.exogenous.utility_thermal.assign(years, 0.0);
  sc.exogenous.utility_electric.assign(years, 0.2);
  sc.exogenous.logit_scale = 1.0;
  sc.exogenous.emission_factor =
      constant_rows(sc.max_age + 1, years, {120.0, 135.0, 150.0, 165.0, 180.0});

  sc.initial_thermal_totals = {3000.0};
  sc.initial_electric_totals = {300.0};
  sc.initial_age_profile = default_age_profile(sc.exogenous.survival, sc.max_age);
  sc.provenance.age_distribution_defaulted = true;
  sc.rebuild_initial_stock();

  sc.exogenous.demand = Matrix(sc.zones, years);
  for (int t = 0; t < years; ++t) sc.exogenous.demand(0, t) = 12000.0 * 3300.0;

  sc.validate();
  return {sc};
}

EmissionTarget tiny_single_zone_target() {
  const TinyInstance inst = tiny_single_zone_instance();
  const auto reference =
      simulate(inst.scenario, no_new_restriction_control(inst.scenario));
  return target_from_beta(0.4, reference.terminal_emissions_tco2());
}

VerificationReport run_oracle_verification(const std::string& name,
                                           const TinyInstance& instance,
                                           const EmissionTarget& target,
                                           const GaConfig& base_config, int seeds) {
  VerificationReport report;
  report.instance_name = name;
  report.seeds = seeds;

  const EnumerationResult oracle = enumerate_optimal(instance, target);
  report.oracle_feasible = oracle.feasible;
  report.oracle_objective = oracle.optimal_disposals;

  for (int s = 0; s < seeds; ++s) {
    GaConfig cfg = base_config;
    cfg.rng_seed = base_config.rng_seed + static_cast<std::uint64_t>(s);
    const OptimizationOutcome out = evolve(instance.scenario, target, cfg);
    if (out.feasible) ++report.feasible_runs;
    if (oracle.feasible) {
      const double scale = std::max(1.0, std::abs(oracle.optimal_disposals));
      if (out.feasible &&
          std::abs(out.objective_disposals - oracle.optimal_disposals) <= 1e-12 * scale)
        ++report.matched;
    } else if (!out.feasible) {
      ++report.matched;
    }
  }
  return report;
}

}  // namespace lezopt
