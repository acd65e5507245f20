// Shared test utilities: tolerances, random instance generators, and a
// straight-line reference recursion independent of the library's
// decomposition into operations.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "lezopt/scenario.hpp"
#include "lezopt/simulate.hpp"

namespace lezopt::testing {

inline bool close_rel(double a, double b, double rel) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= rel * scale;
}

inline double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline int below(std::mt19937_64& rng, int n) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

inline double in_range(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit(rng);
}

/// Small random scenario for property tests: Z <= 3, A <= 10, T <= 10,
/// chain topology, strictly ordered behaviour parameters, demand balanced
/// at t=0 with a growth factor that may shrink.
inline Scenario random_scenario(std::mt19937_64& rng) {
  Scenario sc;
  sc.name = "random";
  sc.base_year = 2025;
  sc.zones = 1 + below(rng, 3);
  sc.max_age = 2 + below(rng, 9);   // 2..10
  sc.horizon = 1 + below(rng, 10);  // 1..10

  sc.topology.zone_count = sc.zones;
  sc.topology.neighbors.resize(sc.zones);
  for (int z = 0; z < sc.zones; ++z) {
    if (z > 0) sc.topology.neighbors[z].push_back(z - 1);
    if (z + 1 < sc.zones) sc.topology.neighbors[z].push_back(z + 1);
  }
  sc.topology.max_tightening.resize(sc.zones);
  for (int z = 0; z < sc.zones; ++z) sc.topology.max_tightening[z] = below(rng, 5);

  const double baseline = unit(rng) < 0.3 ? 0.0 : in_range(rng, 0.01, 0.08);
  const double step = baseline + in_range(rng, 0.02, 0.2);
  const double cap = step + in_range(rng, 0.02, 0.2);
  const double banned = std::min(0.95, cap + in_range(rng, 0.05, 0.3));
  sc.behavior = BehaviorParams{banned, baseline, step, cap};

  const int years = sc.horizon + 1;
  sc.exogenous.survival.assign(sc.max_age + 1, 1.0);
  for (int a = 1; a <= sc.max_age; ++a) sc.exogenous.survival[a] = in_range(rng, 0.5, 0.995);
  sc.exogenous.mileage.resize(years);
  for (int t = 0; t < years; ++t) sc.exogenous.mileage[t] = in_range(rng, 5000.0, 15000.0);
  sc.exogenous.utility_thermal.resize(years);
  sc.exogenous.utility_electric.resize(years);
  for (int t = 0; t < years; ++t) {
    sc.exogenous.utility_thermal[t] = in_range(rng, -2.0, 2.0);
    sc.exogenous.utility_electric[t] = in_range(rng, -2.0, 2.0);
  }
  sc.exogenous.logit_scale = in_range(rng, 0.5, 2.0);
  sc.exogenous.emission_factor = Matrix(sc.max_age + 1, years);
  for (int a = 0; a <= sc.max_age; ++a)
    for (int t = 0; t < years; ++t)
      sc.exogenous.emission_factor(a, t) = in_range(rng, 50.0, 300.0);

  sc.initial_ban_age.resize(sc.zones);
  for (int z = 0; z < sc.zones; ++z)
    sc.initial_ban_age[z] =
        unit(rng) < 0.4 ? sc.no_ban() : below(rng, sc.no_ban() + 1);

  sc.initial_thermal_totals.resize(sc.zones);
  sc.initial_electric_totals.resize(sc.zones);
  for (int z = 0; z < sc.zones; ++z) {
    sc.initial_thermal_totals[z] = in_range(rng, 1e3, 1e6);
    sc.initial_electric_totals[z] = in_range(rng, 10.0, 1e4);
  }
  sc.initial_age_profile.resize(sc.max_age + 1);
  for (int a = 0; a <= sc.max_age; ++a) sc.initial_age_profile[a] = in_range(rng, 0.1, 1.0);
  sc.rebuild_initial_stock();

  sc.exogenous.demand = Matrix(sc.zones, years);
  for (int z = 0; z < sc.zones; ++z) {
    const double base = sc.exogenous.mileage[0] *
                        (sc.initial_thermal_totals[z] + sc.initial_electric_totals[z]);
    const double growth = in_range(rng, 0.97, 1.03);
    for (int t = 0; t < years; ++t) sc.exogenous.demand(z, t) = base * std::pow(growth, t);
  }

  sc.validate();
  return sc;
}

/// Random control in the per-gene box, then repaired to feasibility.
inline ControlSequence random_feasible_control(std::mt19937_64& rng, const Scenario& sc) {
  ControlSequence c(sc.zones, sc.horizon);
  for (int z = 0; z < sc.zones; ++z)
    for (int t = 1; t <= sc.horizon; ++t)
      c.at(z, t) = -1 + below(rng, sc.topology.max_tightening[z] + 2);
  return repair_control(c, sc.initial_ban_age, sc.topology, sc.max_age);
}

/// Straight-line evaluation of the fleet recursion for a FIXED ban-age
/// matrix, written directly from the model equations and independent of the
/// library's operation split. Returns emissions per year (tCO2) and total
/// disposals.
struct ReferenceResult {
  std::vector<double> emissions_tco2;  // t = 0..T
  double total_disposals = 0.0;
};

inline ReferenceResult reference_recursion(const Scenario& sc,
                                           const std::vector<std::vector<int>>& ban_age) {
  const int Z = sc.zones, A = sc.max_age, T = sc.horizon;
  const auto& ex = sc.exogenous;

  // stock[v][a][z]
  std::vector stock(2, std::vector(A + 1, std::vector<double>(Z, 0.0)));
  for (int v = 0; v < 2; ++v)
    for (int a = 0; a <= A; ++a)
      for (int z = 0; z < Z; ++z) stock[v][a][z] = sc.initial_stock.stock(v, a, z);

  ReferenceResult out;
  out.emissions_tco2.assign(T + 1, 0.0);
  auto emissions = [&](int t) {
    double g = 0.0;
    for (int a = 0; a <= A; ++a)
      for (int z = 0; z < Z; ++z) g += ex.emission_factor(a, t) * stock[0][a][z];
    return g * ex.mileage[t] / 1e6;
  };
  out.emissions_tco2[0] = emissions(0);

  for (int t = 1; t <= T; ++t) {
    auto banned = [&](int a, int z) { return ban_age[z][t] <= a; };
    auto sigma = [&](int v, int a, int z) -> double {
      if (v == 1) return 0.0;
      if (banned(a, z)) return sc.behavior.banned_ratio;
      int count = 0;
      for (int n : sc.topology.neighbors[z]) count += banned(a, n) ? 1 : 0;
      if (count == 0) return sc.behavior.baseline_ratio;
      return std::min(sc.behavior.neighbor_step * count, sc.behavior.neighbor_cap);
    };

    std::vector old_v(2, std::vector(A + 1, std::vector<double>(Z, 0.0)));
    std::vector disposed(2, std::vector(A + 1, std::vector<double>(Z, 0.0)));
    for (int v = 0; v < 2; ++v)
      for (int z = 0; z < Z; ++z) {
        for (int a = 1; a < A; ++a) {
          old_v[v][a][z] = ex.survival[a] * (1.0 - sigma(v, a, z)) * stock[v][a - 1][z];
          disposed[v][a][z] = ex.survival[a] * sigma(v, a, z) * stock[v][a - 1][z];
        }
        const double pool = stock[v][A - 1][z] + stock[v][A][z];
        old_v[v][A][z] = ex.survival[A] * (1.0 - sigma(v, A, z)) * pool;
        disposed[v][A][z] = ex.survival[A] * sigma(v, A, z) * pool;
      }

    for (int z = 0; z < Z; ++z) {
      double old_total = 0.0, r_total = 0.0;
      for (int v = 0; v < 2; ++v)
        for (int a = 1; a <= A; ++a) old_total += old_v[v][a][z];
      for (int a = 1; a <= A; ++a) r_total += disposed[0][a][z];
      out.total_disposals += r_total;

      double n = ex.demand(z, t) / ex.mileage[t] - old_total;
      if (n < 0.0) n = 0.0;
      double replaced = std::min(r_total, n);

      double p1, p2;
      if (banned(0, z)) {
        p1 = 0.0;
        p2 = 1.0;
      } else {
        const double x1 = ex.logit_scale * ex.utility_thermal[t];
        const double x2 = ex.logit_scale * ex.utility_electric[t];
        const double m = std::max(x1, x2);
        p1 = std::exp(x1 - m) / (std::exp(x1 - m) + std::exp(x2 - m));
        p2 = 1.0 - p1;
      }

      for (int v = 0; v < 2; ++v)
        for (int a = 1; a <= A; ++a) stock[v][a][z] = old_v[v][a][z];
      stock[0][0][z] = (n - replaced) * p1;
      stock[1][0][z] = replaced + (n - replaced) * p2;
    }
    out.emissions_tco2[t] = emissions(t);
  }
  return out;
}

}  // namespace lezopt::testing
