#pragma once

#include <cstdint>
#include <vector>

#include "lezopt/ga.hpp"
#include "lezopt/scenario.hpp"

namespace lezopt {

/// A scenario small enough to enumerate every feasible control.
struct TinyInstance {
  Scenario scenario;
  std::uint64_t enumeration_bound = 10'000'000;
};

struct EnumerationResult {
  bool feasible = false;
  double optimal_disposals = 0.0;  // meaningful only when feasible
  double min_violation = 0.0;      // smallest cap excess when infeasible
  std::vector<ControlSequence> optimal_controls;  // all argmins, lexicographic
  std::uint64_t raw_sequences = 0;
  std::size_t unique_sequences = 0;  // after repair + dedup
};

/// Number of raw control sequences in the box (saturating at uint64 max).
std::uint64_t enumeration_size(const Scenario& scenario);

/// Exhaustive reference optimum: evaluate every control in the box, after
/// repair and dedup, and return the minimal feasible objective with every
/// control achieving it. Refuses instances above the enumeration bound.
EnumerationResult enumerate_optimal(const TinyInstance& instance,
                                    const EmissionTarget& target,
                                    bool parallel = true);

}  // namespace lezopt
