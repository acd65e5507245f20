#include "lezopt/policy.hpp"

#include <algorithm>
#include <sstream>

#include "lezopt/errors.hpp"

namespace lezopt {

void ZoneTopology::validate() const {
  if (zone_count < 1) throw ValidationError("topology.zone_count must be >= 1");
  if (static_cast<int>(neighbors.size()) != zone_count)
    throw StructuralError("topology.neighbors must list every zone");
  if (static_cast<int>(max_tightening.size()) != zone_count)
    throw StructuralError("topology.max_tightening must list every zone");
  for (int z = 0; z < zone_count; ++z) {
    if (max_tightening[z] < 0) {
      std::ostringstream os;
      os << "topology.max_tightening[" << z << "] = " << max_tightening[z] << " must be >= 0";
      throw ValidationError(os.str());
    }
    for (int n : neighbors[z]) {
      if (n < 0 || n >= zone_count) {
        std::ostringstream os;
        os << "topology.neighbors[" << z << "] references invalid zone " << n;
        throw ValidationError(os.str());
      }
      if (n == z) {
        std::ostringstream os;
        os << "topology.neighbors[" << z << "] is reflexive";
        throw ValidationError(os.str());
      }
      const auto& back = neighbors[n];
      if (std::find(back.begin(), back.end(), z) == back.end()) {
        std::ostringstream os;
        os << "topology.neighbors not symmetric between zones " << z << " and " << n;
        throw ValidationError(os.str());
      }
    }
  }
}

void BehaviorParams::validate() const {
  std::ostringstream os;
  if (!(baseline_ratio >= 0.0)) {
    os << "behavior.baseline_ratio = " << baseline_ratio << " must be >= 0";
    throw ValidationError(os.str());
  }
  if (!(baseline_ratio < neighbor_step)) {
    os << "behavior ordering violated: baseline_ratio (" << baseline_ratio
       << ") must be < neighbor_step (" << neighbor_step << ")";
    throw ValidationError(os.str());
  }
  if (!(neighbor_step < neighbor_cap)) {
    os << "behavior ordering violated: neighbor_step (" << neighbor_step
       << ") must be < neighbor_cap (" << neighbor_cap << ")";
    throw ValidationError(os.str());
  }
  if (!(neighbor_cap < banned_ratio)) {
    os << "behavior ordering violated: neighbor_cap (" << neighbor_cap
       << ") must be < banned_ratio (" << banned_ratio << ")";
    throw ValidationError(os.str());
  }
  if (!(banned_ratio < 1.0)) {
    os << "behavior.banned_ratio = " << banned_ratio << " must be < 1";
    throw ValidationError(os.str());
  }
}

std::vector<unsigned char> ban_indicator(const std::vector<int>& ban_age, int age) {
  std::vector<unsigned char> out(ban_age.size());
  for (std::size_t z = 0; z < ban_age.size(); ++z)
    out[z] = is_banned(ban_age[z], age) ? 1 : 0;
  return out;
}

int advance_ban_age(int prev, int step, int max_step, int max_age) {
  const int no_ban = no_ban_age(max_age);
  const int s = std::clamp(step, -1, max_step);
  const int lo = std::max(0, prev - max_step);
  const int hi = std::min(no_ban, prev + 1);
  return std::clamp(prev - s, lo, hi);
}

std::vector<int> advance_schedule(const std::vector<int>& prev,
                                  const std::vector<int>& step,
                                  const std::vector<int>& max_step, int max_age) {
  if (prev.size() != step.size() || prev.size() != max_step.size())
    throw StructuralError("advance_schedule: mismatched zone counts");
  std::vector<int> next(prev.size());
  for (std::size_t z = 0; z < prev.size(); ++z)
    next[z] = advance_ban_age(prev[z], step[z], max_step[z], max_age);
  return next;
}

double neighbor_disposal_ratio(int banning_neighbors, const BehaviorParams& params) {
  if (banning_neighbors < 0)
    throw ValidationError("neighbor_disposal_ratio: negative neighbour count");
  return std::min(params.neighbor_step * banning_neighbors, params.neighbor_cap);
}

double disposal_ratio(bool banned, int banning_neighbors, const BehaviorParams& params) {
  params.validate();
  if (banned) return params.banned_ratio;
  if (banning_neighbors == 0) return params.baseline_ratio;
  return neighbor_disposal_ratio(banning_neighbors, params);
}

std::string Violation::describe() const {
  std::ostringstream os;
  os << "zone " << (zone + 1) << ", year index " << year_index << ": ";
  switch (kind) {
    case ViolationKind::Box:
      os << "step " << value << " outside box [-1, D_z]";
      break;
    case ViolationKind::Reauthorization:
      os << "ban age " << value << " re-authorizes a forbidden cohort";
      break;
    case ViolationKind::Slope:
      os << "ban age " << value << " tightens faster than the allowed slope";
      break;
    case ViolationKind::BanAgeRange:
      os << "ban age " << value << " below 0";
      break;
  }
  return os.str();
}

namespace {

void check_control_shapes(const ControlSequence& control,
                          const std::vector<int>& initial_ban_age,
                          const ZoneTopology& topology, int max_age) {
  topology.validate();
  if (control.zones != topology.zone_count)
    throw StructuralError("control zones do not match topology");
  if (static_cast<int>(initial_ban_age.size()) != control.zones)
    throw StructuralError("initial ban ages do not match control zones");
  if (control.horizon < 1) throw StructuralError("control horizon must be >= 1");
  const int no_ban = no_ban_age(max_age);
  for (int z = 0; z < control.zones; ++z) {
    if (initial_ban_age[z] < 0 || initial_ban_age[z] > no_ban) {
      std::ostringstream os;
      os << "initial ban age for zone " << (z + 1) << " = " << initial_ban_age[z]
         << " outside [0, " << no_ban << "]";
      throw ValidationError(os.str());
    }
  }
}

}  // namespace

FeasibilityReport validate_control(const ControlSequence& control,
                                   const std::vector<int>& initial_ban_age,
                                   const ZoneTopology& topology, int max_age) {
  check_control_shapes(control, initial_ban_age, topology, max_age);

  FeasibilityReport report;
  report.schedule = RestrictionSchedule(control.zones, control.horizon);
  for (int z = 0; z < control.zones; ++z) report.schedule.at(z, 0) = initial_ban_age[z];

  for (int z = 0; z < control.zones; ++z) {
    const int max_step = topology.max_tightening[z];
    for (int t = 1; t <= control.horizon; ++t) {
      const int cur = report.schedule.at(z, t - 1);
      const int step = control.at(z, t);
      const int raw = cur - step;

      if (step < -1 || step > max_step)
        report.violations.push_back({z, t, ViolationKind::Box, step});
      if (raw > cur + 1)
        report.violations.push_back({z, t, ViolationKind::Reauthorization, raw});
      if (raw < cur - max_step)
        report.violations.push_back({z, t, ViolationKind::Slope, raw});
      // Range check with the step already boxed, so cumulative undershoot of
      // in-box controls is still caught. Riding above the no-ban sentinel is
      // a saturating no-op, not a violation.
      const int boxed_raw = cur - std::clamp(step, -1, max_step);
      if (boxed_raw < 0)
        report.violations.push_back({z, t, ViolationKind::BanAgeRange, boxed_raw});

      report.schedule.at(z, t) = advance_ban_age(cur, step, max_step, max_age);
    }
  }
  return report;
}

ControlSequence repair_control(const ControlSequence& control,
                               const std::vector<int>& initial_ban_age,
                               const ZoneTopology& topology, int max_age) {
  check_control_shapes(control, initial_ban_age, topology, max_age);

  ControlSequence repaired = control;
  for (int z = 0; z < control.zones; ++z) {
    int cur = initial_ban_age[z];
    for (int t = 1; t <= control.horizon; ++t) {
      const int next = advance_ban_age(cur, control.at(z, t), topology.max_tightening[z], max_age);
      repaired.at(z, t) = cur - next;
      cur = next;
    }
  }
  return repaired;
}

}  // namespace lezopt
