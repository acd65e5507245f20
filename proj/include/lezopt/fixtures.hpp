#pragma once

#include "lezopt/ga.hpp"
#include "lezopt/oracle.hpp"
#include "lezopt/scenario.hpp"

namespace lezopt {

/// Synthetic six-ring scenario mirroring the bundled idf_fixture file:
/// concentric ring topology, published initial schedule/stocks, and smooth
/// synthetic exogenous series. Not a calibrated dataset.
Scenario make_idf_fixture();

/// Fixed two-zone enumeration instance (Z=2, T=4, A=5, D=[2,1], zero
/// baseline disposal) used to cross-check the optimizer against the
/// exhaustive oracle.
TinyInstance tiny_two_zone_instance();
EmissionTarget tiny_two_zone_target();

/// Smaller single-zone companion instance for the verification harness.
TinyInstance tiny_single_zone_instance();
EmissionTarget tiny_single_zone_target();

/// Oracle-vs-GA agreement over a batch of seeds.
struct VerificationReport {
  std::string instance_name;
  int seeds = 0;
  int matched = 0;        // runs attaining the oracle optimum
  int feasible_runs = 0;  // runs returning a feasible control
  bool oracle_feasible = false;
  double oracle_objective = 0.0;

  bool passed() const {
    if (oracle_feasible && feasible_runs != seeds) return false;
    return matched >= seeds - 1;
  }
};

/// Run the GA across `seeds` consecutive seeds and compare each best
/// objective with the exhaustive optimum.
VerificationReport run_oracle_verification(const std::string& name,
                                           const TinyInstance& instance,
                                           const EmissionTarget& target,
                                           const GaConfig& base_config,
                                           int seeds = 20);

}  // namespace lezopt
