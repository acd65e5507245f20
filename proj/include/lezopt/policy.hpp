#pragma once

#include <string>
#include <vector>

namespace lezopt {

/// Adjacency and per-zone tightening limits for the zoned study area.
struct ZoneTopology {
  int zone_count = 0;
  std::vector<std::vector<int>> neighbors;  // 0-based adjacency lists
  std::vector<int> max_tightening;          // per-zone max ban-age decrease per year

  void validate() const;  // symmetric, irreflexive, consistent sizes
};

/// Owner response to restrictions: disposal ratios by pressure level.
/// Required ordering: 0 <= baseline < neighbor_step < neighbor_cap < banned < 1.
/// baseline may be exactly 0 (analytic no-pressure instances).
struct BehaviorParams {
  double banned_ratio = 0.9;     // disposal probability once the vehicle is banned
  double baseline_ratio = 0.05;  // disposal ratio with no pressure anywhere
  double neighbor_step = 0.2;    // added pressure per neighbouring zone that bans
  double neighbor_cap = 0.6;     // cap on neighbour-induced pressure

  void validate() const;
};

/// Minimum banned age per zone and year, t = 0..horizon.
/// max_age + 1 is the "no ban" sentinel.
struct RestrictionSchedule {
  int zones = 0;
  int horizon = 0;  // number of simulated years after the base year
  std::vector<int> ban_age;  // zones x (horizon+1), row-major by zone

  RestrictionSchedule() = default;
  RestrictionSchedule(int z, int t)
      : zones(z), horizon(t), ban_age(static_cast<std::size_t>(z) * (t + 1), 0) {}

  int at(int z, int t) const { return ban_age[static_cast<std::size_t>(z) * (horizon + 1) + t]; }
  int& at(int z, int t) { return ban_age[static_cast<std::size_t>(z) * (horizon + 1) + t]; }

  friend bool operator==(const RestrictionSchedule&, const RestrictionSchedule&) = default;
};

/// Yearly ban tightening steps per zone, t = 1..horizon. A step of -1 means
/// no new restriction (the ban age rides up with the aging fleet); positive
/// steps lower the ban age. Doubles as the optimizer genome (row-major).
struct ControlSequence {
  int zones = 0;
  int horizon = 0;
  std::vector<int> steps;  // zones x horizon, [z*horizon + (t-1)]

  ControlSequence() = default;
  ControlSequence(int z, int t, int fill = -1)
      : zones(z), horizon(t), steps(static_cast<std::size_t>(z) * t, fill) {}

  int at(int z, int t) const { return steps[static_cast<std::size_t>(z) * horizon + (t - 1)]; }
  int& at(int z, int t) { return steps[static_cast<std::size_t>(z) * horizon + (t - 1)]; }

  friend bool operator==(const ControlSequence&, const ControlSequence&) = default;
};

inline int no_ban_age(int max_age) { return max_age + 1; }

/// True when a vehicle of this age is forbidden under the given minimum
/// banned age.
inline bool is_banned(int ban_age, int age) { return ban_age <= age; }

/// Per-zone ban indicators for one age.
std::vector<unsigned char> ban_indicator(const std::vector<int>& ban_age, int age);

/// Advance one zone's ban age by one year, clipping to the reachable range
/// [max(0, prev - max_step), min(no_ban, prev + 1)].
int advance_ban_age(int prev, int step, int max_step, int max_age);

/// Advance all zones' ban ages by one year.
std::vector<int> advance_schedule(const std::vector<int>& prev,
                                  const std::vector<int>& step,
                                  const std::vector<int>& max_step, int max_age);

/// Disposal pressure from banning neighbours: min(step * count, cap).
double neighbor_disposal_ratio(int banning_neighbors, const BehaviorParams& params);

/// Disposal ratio for one (age, zone) cell: banned_ratio when banned,
/// baseline_ratio when unpressured, neighbour pressure otherwise.
double disposal_ratio(bool banned, int banning_neighbors, const BehaviorParams& params);

enum class ViolationKind { Box, Reauthorization, Slope, BanAgeRange };

struct Violation {
  int zone = 0;        // 0-based
  int year_index = 0;  // t in 1..horizon
  ViolationKind kind = ViolationKind::Box;
  int value = 0;  // offending step or induced ban age

  std::string describe() const;
};

struct FeasibilityReport {
  std::vector<Violation> violations;
  RestrictionSchedule schedule;  // induced ban ages (always clipped in-domain)

  bool feasible() const { return violations.empty(); }
};

/// Check a raw control against the box, no-reauthorization, slope and
/// ban-age-range constraints. Violations are data, not errors; the induced
/// schedule is returned alongside (clipped where the raw control overshoots).
FeasibilityReport validate_control(const ControlSequence& control,
                                   const std::vector<int>& initial_ban_age,
                                   const ZoneTopology& topology, int max_age);

/// Deterministically map any integer control onto a feasible one: clip each
/// step into its box, clip the induced ban age into range, back-solve the
/// step. Processes years in increasing order.
ControlSequence repair_control(const ControlSequence& control,
                               const std::vector<int>& initial_ban_age,
                               const ZoneTopology& topology, int max_age);

}  // namespace lezopt
