#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lezopt/tensor.hpp"

namespace lezopt {

inline constexpr int kThermal = 0;
inline constexpr int kElectric = 1;
inline constexpr int kVehicleTypes = 2;

/// Vehicle stock for one year, indexed (type, age 0..A, zone).
struct FleetState {
  int year = 0;  // calendar year
  Tensor3 stock;

  FleetState() = default;
  FleetState(int year_, int max_age, int zones)
      : year(year_), stock(kVehicleTypes, max_age + 1, zones) {}

  int max_age() const { return stock.ages() - 1; }
  int zones() const { return stock.zones(); }

  /// All entries finite and non-negative, exactly two vehicle types.
  void validate() const;

  friend bool operator==(const FleetState&, const FleetState&) = default;
};

/// One year's flows: survivors kept (old), survivors scrapped under LEZ
/// pressure (disposed), and new registrations.
struct AnnualFlows {
  Tensor3 old_stock;               // ages >= 1
  Tensor3 disposed;                // ages >= 1, electric rows all zero
  std::vector<double> new_total;   // per zone
  Matrix new_by_type;              // 2 x zones
};

/// All exogenous series and behavioural parameters of the fleet recursion.
/// Time axes cover t = 0..horizon; survival is indexed by the age a vehicle
/// is turning (1..max_age, entry 0 unused).
struct ExogenousInputs {
  Matrix demand;                         // zones x (horizon+1), vehicle-km/year
  std::vector<double> mileage;           // km/vehicle/year
  std::vector<double> survival;          // survival[a], a = 1..max_age
  Matrix emission_factor;                // (max_age+1) x (horizon+1), gCO2/km, thermal
  std::vector<double> utility_thermal;   // per year
  std::vector<double> utility_electric;  // per year
  double logit_scale = 1.0;

  void validate(int max_age, int zones, int horizon) const;
};

/// Split the survivors of each cohort into kept and disposed vehicles.
/// Ages 1..A-1 draw from the previous year's age a-1; the terminal bin A
/// absorbs both the aging A-1 cohort and the persisting A cohort. Disposal
/// ratios apply to thermal vehicles only (electric rows of `disposal` must
/// be zero).
void survivors_split(const FleetState& prev, const Tensor3& disposal,
                     std::span<const double> survival, Tensor3& old_out,
                     Tensor3& disposed_out);

/// New registrations needed to serve one zone's demand. Negative raw values
/// (demand shrinking faster than the fleet) clamp to zero and set *shrank.
double new_vehicle_count(double demand, double mileage, double old_total,
                         bool* shrank = nullptr);

/// Purchase split between thermal and electric via a logit on the two
/// utilities. When new thermal vehicles are banned in the zone the thermal
/// share is zero. The pair sums to one exactly.
std::pair<double, double> purchase_probabilities(double utility_thermal,
                                                 double utility_electric,
                                                 double logit_scale,
                                                 bool thermal_purchase_banned);

/// Disaggregate new registrations: every disposed thermal vehicle is
/// replaced by an electric one; the remainder follows the purchase split.
/// Disposals exceeding new registrations clamp to them and set *overflow.
std::pair<double, double> split_new_purchases(double new_total,
                                              double thermal_disposals,
                                              double p_thermal, double p_electric,
                                              bool* overflow = nullptr);

/// Fleet-wide CO2 for one year, in tonnes. Only thermal stock contributes;
/// the g -> t conversion happens once, here.
double annual_emissions_tco2(const FleetState& state, double mileage,
                             std::span<const double> emission_factor_by_age);

}  // namespace lezopt
