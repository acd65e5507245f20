#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lezopt/fleet.hpp"
#include "lezopt/policy.hpp"

namespace lezopt {

/// Records defaulting applied while loading a scenario file.
struct ScenarioProvenance {
  bool age_distribution_defaulted = false;
  bool behavior_defaulted = false;
  std::vector<std::string> notes;
};

/// A complete, immutable problem instance: dimensions, topology, exogenous
/// series, behaviour, and initial conditions.
struct Scenario {
  std::string name;
  int base_year = 0;
  int horizon = 0;  // simulated years after base_year
  int max_age = 0;
  int zones = 0;

  ZoneTopology topology;
  ExogenousInputs exogenous;
  BehaviorParams behavior;

  std::vector<int> initial_ban_age;  // per zone, 0..max_age+1

  // Canonical initial-stock representation (what scenario files carry):
  // per-zone totals by type plus one shared age-weight profile (any positive
  // scale; normalized when expanded). Kept verbatim so serialization
  // round-trips bit-exactly. Empty profile = tensor-only scenario (built in
  // code, not serializable).
  std::vector<double> initial_thermal_totals;
  std::vector<double> initial_electric_totals;
  std::vector<double> initial_age_profile;

  FleetState initial_stock;  // derived via expand_initial_stock

  ScenarioProvenance provenance;  // load metadata, not part of scenario identity

  int no_ban() const { return no_ban_age(max_age); }

  /// Derive initial_stock from the canonical totals + profile fields.
  void rebuild_initial_stock();

  /// Check every component invariant; throws ValidationError naming the field.
  void validate() const;

  bool operator==(const Scenario& o) const;
};

/// Survival-consistent steady-state age profile: w[a] proportional to the
/// product of survival rates up to age a, normalized to sum 1.
std::vector<double> default_age_profile(const std::vector<double>& survival, int max_age);

/// Expand per-zone totals and an age-weight profile (normalized internally)
/// into a full stock tensor.
FleetState expand_initial_stock(int base_year, int max_age, int zones,
                                const std::vector<double>& thermal_totals,
                                const std::vector<double>& electric_totals,
                                const std::vector<double>& age_profile);

/// Load and fully validate a scenario file (JSON). Error messages name the
/// offending field; defaulting is recorded in the provenance block.
Scenario load_scenario(const std::filesystem::path& path);

/// Write a scenario back to disk. Defaulted blocks are omitted so that the
/// file round-trips through the same defaulting rules.
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

/// The control that never adds a restriction: every step is -1 and existing
/// bans ride up with the aging fleet.
ControlSequence no_new_restriction_control(const Scenario& scenario);

/// Counterfactual in which restrictions never existed: no-ban schedule
/// everywhere and zero baseline disposal (nothing to anticipate).
Scenario no_lez_variant(const Scenario& scenario);

}  // namespace lezopt
