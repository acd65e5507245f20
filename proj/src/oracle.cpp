#include "lezopt/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "lezopt/errors.hpp"

namespace lezopt {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

struct GenomeHash {
  std::size_t operator()(const std::vector<int>& g) const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (int x : g) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

std::uint64_t enumeration_size(const Scenario& scenario) {
  std::uint64_t total = 1;
  for (int z = 0; z < scenario.zones; ++z) {
    const std::uint64_t alphabet =
        static_cast<std::uint64_t>(scenario.topology.max_tightening[z]) + 2;
    for (int t = 0; t < scenario.horizon; ++t) total = saturating_mul(total, alphabet);
  }
  return total;
}

EnumerationResult enumerate_optimal(const TinyInstance& instance,
                                    const EmissionTarget& target, bool parallel) {
  const Scenario& sc = instance.scenario;
  sc.validate();

  const std::uint64_t total = enumeration_size(sc);
  if (total > instance.enumeration_bound) {
    std::ostringstream os;
    os << "enumeration refused: " << total << " raw control sequences exceed the bound of "
       << instance.enumeration_bound;
    throw ValidationError(os.str());
  }

  const int genes = sc.zones * sc.horizon;
  std::vector<int> radix(genes);
  for (int k = 0; k < genes; ++k)
    radix[k] = sc.topology.max_tightening[k / sc.horizon] + 2;  // alphabet {-1..D_z}

  // Enumerate the raw box in mixed radix, repair each sequence, and keep the
  // distinct repaired genomes.
  std::unordered_set<std::vector<int>, GenomeHash> seen;
  std::vector<int> digits(genes, 0);
  ControlSequence candidate(sc.zones, sc.horizon);
  for (std::uint64_t i = 0; i < total; ++i) {
    for (int k = 0; k < genes; ++k) candidate.steps[k] = digits[k] - 1;
    seen.insert(
        repair_control(candidate, sc.initial_ban_age, sc.topology, sc.max_age).steps);
    for (int k = genes - 1; k >= 0; --k) {
      if (++digits[k] < radix[k]) break;
      digits[k] = 0;
    }
  }

  std::vector<std::vector<int>> unique(seen.begin(), seen.end());
  std::sort(unique.begin(), unique.end());

  const int n = static_cast<int>(unique.size());
  std::vector<Fitness> fits(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#else
  (void)parallel;
#endif
  for (int i = 0; i < n; ++i) {
    ControlSequence c(sc.zones, sc.horizon);
    c.steps = unique[i];
    fits[i] = fitness(sc, c, target);
  }

  EnumerationResult result;
  result.raw_sequences = total;
  result.unique_sequences = unique.size();
  result.min_violation = std::numeric_limits<double>::infinity();

  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (fits[i].violation == 0.0) {
      result.feasible = true;
      best = std::min(best, fits[i].objective);
    }
    result.min_violation = std::min(result.min_violation, fits[i].violation);
  }
  if (result.feasible) {
    result.optimal_disposals = best;
    for (int i = 0; i < n; ++i)
      if (fits[i].violation == 0.0 && fits[i].objective == best) {
        ControlSequence c(sc.zones, sc.horizon);
        c.steps = unique[i];
        result.optimal_controls.push_back(std::move(c));
      }
  }
  return result;
}

}  // namespace lezopt
