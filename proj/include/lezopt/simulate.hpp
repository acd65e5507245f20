#pragma once

#include <vector>

#include "lezopt/fleet.hpp"
#include "lezopt/policy.hpp"
#include "lezopt/scenario.hpp"

namespace lezopt {

/// Non-fatal per-(year, zone) diagnostics raised while stepping the model.
struct DiagnosticFlag {
  enum class Kind { DemandShrink, ReplacementOverflow };
  int year_index = 0;  // t in 1..horizon
  int zone = 0;        // 0-based
  Kind kind = Kind::DemandShrink;
  double magnitude = 0.0;  // clamped amount, in vehicles
};

struct SimulateOptions {
  bool record_tensors = false;  // keep per-year stock/flow/ratio tensors
};

/// Deterministic record of one forward run.
struct SimulationTrace {
  int base_year = 0;
  int horizon = 0;
  int max_age = 0;
  int zones = 0;

  std::vector<double> emissions_tco2;         // t = 0..horizon
  std::vector<double> disposals;              // annual, t = 0..horizon ([0] = 0)
  std::vector<double> disposals_cumulative;   // t = 0..horizon
  RestrictionSchedule schedule;               // ban ages actually applied
  std::vector<DiagnosticFlag> diagnostics;

  // Populated only with SimulateOptions::record_tensors.
  std::vector<FleetState> states;      // t = 0..horizon
  std::vector<AnnualFlows> flows;      // index t-1
  std::vector<Tensor3> disposal_ratios;  // index t-1

  double total_disposals() const { return disposals_cumulative.back(); }
  double terminal_emissions_tco2() const { return emissions_tco2.back(); }

  bool shrink_flagged(int year_index, int zone) const;
};

/// Run the fleet recursion over the scenario horizon under the given
/// control. The control must be feasible (validate_control reports no
/// violations); identical inputs produce bit-identical traces.
SimulationTrace simulate(const Scenario& scenario, const ControlSequence& control,
                         const SimulateOptions& options = {});

}  // namespace lezopt
