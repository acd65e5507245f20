#include "lezopt/simulate.hpp"

#include <cmath>
#include <sstream>

#include "lezopt/errors.hpp"

namespace lezopt {

bool SimulationTrace::shrink_flagged(int year_index, int zone) const {
  for (const auto& d : diagnostics)
    if (d.kind == DiagnosticFlag::Kind::DemandShrink && d.year_index == year_index &&
        d.zone == zone)
      return true;
  return false;
}

SimulationTrace simulate(const Scenario& scenario, const ControlSequence& control,
                         const SimulateOptions& options) {
  scenario.validate();
  if (control.zones != scenario.zones || control.horizon != scenario.horizon)
    throw StructuralError("simulate: control dimensions do not match scenario");

  auto report = validate_control(control, scenario.initial_ban_age, scenario.topology,
                                 scenario.max_age);
  if (!report.feasible()) {
    std::ostringstream os;
    os << "simulate: control infeasible (" << report.violations.size()
       << " violations), first: " << report.violations.front().describe();
    throw ValidationError(os.str());
  }

  const int T = scenario.horizon;
  const int A = scenario.max_age;
  const int Z = scenario.zones;
  const auto& ex = scenario.exogenous;

  SimulationTrace trace;
  trace.base_year = scenario.base_year;
  trace.horizon = T;
  trace.max_age = A;
  trace.zones = Z;
  trace.schedule = std::move(report.schedule);
  trace.emissions_tco2.assign(T + 1, 0.0);
  trace.disposals.assign(T + 1, 0.0);
  trace.disposals_cumulative.assign(T + 1, 0.0);

  FleetState current = scenario.initial_stock;
  current.year = scenario.base_year;

  std::vector<double> eps_col(A + 1);
  auto emission_column = [&](int t) {
    for (int a = 0; a <= A; ++a) eps_col[a] = ex.emission_factor(a, t);
  };
  emission_column(0);
  trace.emissions_tco2[0] = annual_emissions_tco2(current, ex.mileage[0], eps_col);

  if (options.record_tensors) {
    trace.states.reserve(T + 1);
    trace.states.push_back(current);
    trace.flows.reserve(T);
    trace.disposal_ratios.reserve(T);
  }

  Tensor3 sigma(kVehicleTypes, A + 1, Z);
  Tensor3 old_t(kVehicleTypes, A + 1, Z);
  Tensor3 disposed_t(kVehicleTypes, A + 1, Z);
  std::vector<unsigned char> banned_now(static_cast<std::size_t>(A + 1) * Z);
  std::vector<int> neighbor_bans(static_cast<std::size_t>(A + 1) * Z);
  // Pressure depends only on the neighbour count; precompute the small table.
  const int max_degree = [&] {
    std::size_t d = 0;
    for (const auto& nb : scenario.topology.neighbors) d = std::max(d, nb.size());
    return static_cast<int>(d);
  }();
  std::vector<double> pressure_by_count(max_degree + 1);
  pressure_by_count[0] = scenario.behavior.baseline_ratio;
  for (int c = 1; c <= max_degree; ++c)
    pressure_by_count[c] = neighbor_disposal_ratio(c, scenario.behavior);

  for (int t = 1; t <= T; ++t) {
    // Ban indicators and neighbour pressure for this year's schedule.
    for (int a = 0; a <= A; ++a)
      for (int z = 0; z < Z; ++z)
        banned_now[static_cast<std::size_t>(a) * Z + z] =
            is_banned(trace.schedule.at(z, t), a) ? 1 : 0;
    for (int a = 0; a <= A; ++a)
      for (int z = 0; z < Z; ++z) {
        int count = 0;
        for (int n : scenario.topology.neighbors[z])
          count += banned_now[static_cast<std::size_t>(a) * Z + n];
        neighbor_bans[static_cast<std::size_t>(a) * Z + z] = count;
      }

    sigma.fill(0.0);
    for (int a = 1; a <= A; ++a)
      for (int z = 0; z < Z; ++z) {
        const std::size_t i = static_cast<std::size_t>(a) * Z + z;
        sigma(kThermal, a, z) = banned_now[i] ? scenario.behavior.banned_ratio
                                              : pressure_by_count[neighbor_bans[i]];
      }

    survivors_split(current, sigma, ex.survival, old_t, disposed_t);

    FleetState next(scenario.base_year + t, A, Z);
    std::vector<double> new_total(Z, 0.0);
    Matrix new_by_type(kVehicleTypes, Z);
    double disposed_this_year = 0.0;

    for (int z = 0; z < Z; ++z) {
      double old_total = 0.0;
      for (int v = 0; v < kVehicleTypes; ++v)
        for (int a = 1; a <= A; ++a) old_total += old_t(v, a, z);

      bool shrank = false;
      const double n_new = new_vehicle_count(ex.demand(z, t), ex.mileage[t], old_total, &shrank);
      if (shrank)
        trace.diagnostics.push_back({t, z, DiagnosticFlag::Kind::DemandShrink,
                                     old_total - ex.demand(z, t) / ex.mileage[t]});

      double thermal_disposed = 0.0;
      for (int a = 1; a <= A; ++a) thermal_disposed += disposed_t(kThermal, a, z);

      const bool new_thermal_banned = banned_now[z] != 0;  // age-0 ban indicator
      const auto [p1, p2] = purchase_probabilities(ex.utility_thermal[t],
                                                   ex.utility_electric[t],
                                                   ex.logit_scale, new_thermal_banned);
      bool overflow = false;
      const auto [n_thermal, n_electric] =
          split_new_purchases(n_new, thermal_disposed, p1, p2, &overflow);
      if (overflow)
        trace.diagnostics.push_back(
            {t, z, DiagnosticFlag::Kind::ReplacementOverflow, thermal_disposed - n_new});

      new_total[z] = n_new;
      new_by_type(kThermal, z) = n_thermal;
      new_by_type(kElectric, z) = n_electric;
      next.stock(kThermal, 0, z) = n_thermal;
      next.stock(kElectric, 0, z) = n_electric;
      disposed_this_year += thermal_disposed;
    }

    for (int v = 0; v < kVehicleTypes; ++v)
      for (int a = 1; a <= A; ++a)
        for (int z = 0; z < Z; ++z) next.stock(v, a, z) = old_t(v, a, z);

    for (double s : next.stock.data())
      if (!std::isfinite(s) || s < 0.0) {
        std::ostringstream os;
        os << "simulate: inconsistent stock value " << s << " at year index " << t;
        throw SimulationError(os.str());
      }

    current = std::move(next);
    emission_column(t);
    trace.emissions_tco2[t] = annual_emissions_tco2(current, ex.mileage[t], eps_col);
    trace.disposals[t] = disposed_this_year;
    trace.disposals_cumulative[t] = trace.disposals_cumulative[t - 1] + disposed_this_year;

    if (options.record_tensors) {
      trace.states.push_back(current);
      trace.flows.push_back({old_t, disposed_t, new_total, new_by_type});
      trace.disposal_ratios.push_back(sigma);
    }
  }

  return trace;
}

}  // namespace lezopt
