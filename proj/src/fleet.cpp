#include "lezopt/fleet.hpp"

#include <cmath>
#include <sstream>

#include "lezopt/errors.hpp"

namespace lezopt {

void FleetState::validate() const {
  if (stock.types() != kVehicleTypes)
    throw StructuralError("fleet stock must have exactly two vehicle types");
  if (stock.ages() < 2) throw StructuralError("fleet stock needs ages 0..A with A >= 1");
  if (stock.zones() < 1) throw StructuralError("fleet stock needs at least one zone");
  for (int v = 0; v < stock.types(); ++v)
    for (int a = 0; a < stock.ages(); ++a)
      for (int z = 0; z < stock.zones(); ++z) {
        const double s = stock(v, a, z);
        if (!std::isfinite(s) || s < 0.0) {
          std::ostringstream os;
          os << "stock[" << v << "][" << a << "][" << z << "] = " << s
             << " must be finite and >= 0";
          throw ValidationError(os.str());
        }
      }
}

void ExogenousInputs::validate(int max_age, int zones, int horizon) const {
  const int years = horizon + 1;
  if (demand.rows() != zones || demand.cols() != years)
    throw StructuralError("exogenous.demand must be zones x (horizon+1)");
  if (static_cast<int>(mileage.size()) != years)
    throw StructuralError("exogenous.mileage must cover t = 0..horizon");
  if (static_cast<int>(survival.size()) != max_age + 1)
    throw StructuralError("exogenous.survival must cover ages 1..max_age");
  if (emission_factor.rows() != max_age + 1 || emission_factor.cols() != years)
    throw StructuralError("exogenous.emission_factor must be (max_age+1) x (horizon+1)");
  if (static_cast<int>(utility_thermal.size()) != years ||
      static_cast<int>(utility_electric.size()) != years)
    throw StructuralError("exogenous utilities must cover t = 0..horizon");

  std::ostringstream os;
  for (int z = 0; z < zones; ++z)
    for (int t = 0; t < years; ++t)
      if (!(demand(z, t) >= 0.0) || !std::isfinite(demand(z, t))) {
        os << "exogenous.demand[" << z << "][" << t << "] = " << demand(z, t)
           << " must be finite and >= 0";
        throw ValidationError(os.str());
      }
  for (int t = 0; t < years; ++t)
    if (!(mileage[t] > 0.0) || !std::isfinite(mileage[t])) {
      os << "exogenous.mileage[" << t << "] = " << mileage[t] << " must be > 0";
      throw ValidationError(os.str());
    }
  for (int a = 1; a <= max_age; ++a)
    if (!(survival[a] >= 0.0 && survival[a] <= 1.0)) {
      os << "exogenous.survival[" << a << "] = " << survival[a] << " outside [0, 1]";
      throw ValidationError(os.str());
    }
  for (int a = 0; a <= max_age; ++a)
    for (int t = 0; t < years; ++t)
      if (!(emission_factor(a, t) >= 0.0) || !std::isfinite(emission_factor(a, t))) {
        os << "exogenous.emission_factor[" << a << "][" << t << "] = "
           << emission_factor(a, t) << " must be finite and >= 0";
        throw ValidationError(os.str());
      }
  for (int t = 0; t < years; ++t)
    if (!std::isfinite(utility_thermal[t]) || !std::isfinite(utility_electric[t])) {
      os << "exogenous utilities at t = " << t << " must be finite";
      throw ValidationError(os.str());
    }
  if (!std::isfinite(logit_scale))
    throw ValidationError("exogenous.logit_scale must be finite");
}

void survivors_split(const FleetState& prev, const Tensor3& disposal,
                     std::span<const double> survival, Tensor3& old_out,
                     Tensor3& disposed_out) {
  const int max_age = prev.max_age();
  const int zones = prev.zones();
  if (!prev.stock.same_shape(disposal))
    throw StructuralError("survivors_split: disposal-ratio tensor shape mismatch");
  if (static_cast<int>(survival.size()) != max_age + 1)
    throw StructuralError("survivors_split: survival vector must cover ages 1..max_age");

  for (int v = 0; v < kVehicleTypes; ++v)
    for (int a = 0; a <= max_age; ++a)
      for (int z = 0; z < zones; ++z) {
        const double s = disposal(v, a, z);
        if (!(s >= 0.0 && s <= 1.0)) {
          std::ostringstream os;
          os << "disposal ratio[" << v << "][" << a << "][" << z << "] = " << s
             << " outside [0, 1]";
          throw ValidationError(os.str());
        }
        if (v == kElectric && s != 0.0)
          throw ValidationError("disposal ratio must be zero for electric vehicles");
      }

  if (!old_out.same_shape(prev.stock)) old_out = Tensor3(kVehicleTypes, max_age + 1, zones);
  if (!disposed_out.same_shape(prev.stock))
    disposed_out = Tensor3(kVehicleTypes, max_age + 1, zones);
  old_out.fill(0.0);
  disposed_out.fill(0.0);

  for (int v = 0; v < kVehicleTypes; ++v) {
    for (int a = 1; a < max_age; ++a) {
      const double eta = survival[a];
      for (int z = 0; z < zones; ++z) {
        const double pool = prev.stock(v, a - 1, z);
        const double sigma = disposal(v, a, z);
        old_out(v, a, z) = eta * (1.0 - sigma) * pool;
        disposed_out(v, a, z) = eta * sigma * pool;
      }
    }
    // Terminal bin: absorbs the aging A-1 cohort and the persisting A cohort.
    const double eta = survival[max_age];
    for (int z = 0; z < zones; ++z) {
      const double pool = prev.stock(v, max_age - 1, z) + prev.stock(v, max_age, z);
      const double sigma = disposal(v, max_age, z);
      old_out(v, max_age, z) = eta * (1.0 - sigma) * pool;
      disposed_out(v, max_age, z) = eta * sigma * pool;
    }
  }
}

double new_vehicle_count(double demand, double mileage, double old_total, bool* shrank) {
  if (shrank) *shrank = false;
  if (!(mileage > 0.0)) {
    std::ostringstream os;
    os << "mileage = " << mileage << " must be > 0";
    throw ValidationError(os.str());
  }
  if (demand < 0.0 || old_total < 0.0)
    throw ValidationError("new_vehicle_count: negative demand or old stock");
  const double n = demand / mileage - old_total;
  if (n < 0.0) {
    if (shrank) *shrank = true;
    return 0.0;
  }
  return n;
}

std::pair<double, double> purchase_probabilities(double utility_thermal,
                                                 double utility_electric,
                                                 double logit_scale,
                                                 bool thermal_purchase_banned) {
  if (!std::isfinite(utility_thermal) || !std::isfinite(utility_electric) ||
      !std::isfinite(logit_scale))
    throw ValidationError("purchase_probabilities: non-finite input");
  if (thermal_purchase_banned) return {0.0, 1.0};
  const double x1 = logit_scale * utility_thermal;
  const double x2 = logit_scale * utility_electric;
  const double m = std::max(x1, x2);
  const double e1 = std::exp(x1 - m);
  const double e2 = std::exp(x2 - m);
  const double p1 = e1 / (e1 + e2);
  return {p1, 1.0 - p1};
}

std::pair<double, double> split_new_purchases(double new_total, double thermal_disposals,
                                              double p_thermal, double p_electric,
                                              bool* overflow) {
  if (overflow) *overflow = false;
  if (new_total < 0.0 || thermal_disposals < 0.0)
    throw ValidationError("split_new_purchases: negative vehicle counts");
  if (!(p_thermal >= 0.0 && p_thermal <= 1.0 && p_electric >= 0.0 && p_electric <= 1.0) ||
      std::abs(p_thermal + p_electric - 1.0) > 1e-12)
    throw ValidationError("split_new_purchases: purchase probabilities must sum to 1");

  double replaced = thermal_disposals;
  if (replaced > new_total) {
    replaced = new_total;
    if (overflow) *overflow = true;
  }
  const double rest = new_total - replaced;
  return {rest * p_thermal, replaced + rest * p_electric};
}

double annual_emissions_tco2(const FleetState& state, double mileage,
                             std::span<const double> emission_factor_by_age) {
  const int max_age = state.max_age();
  if (static_cast<int>(emission_factor_by_age.size()) != max_age + 1)
    throw StructuralError("annual_emissions: emission factor row must cover ages 0..max_age");
  double grams = 0.0;
  for (int a = 0; a <= max_age; ++a) {
    double thermal = 0.0;
    for (int z = 0; z < state.zones(); ++z) thermal += state.stock(kThermal, a, z);
    grams += emission_factor_by_age[a] * thermal;
  }
  return grams * mileage / 1e6;
}

}  // namespace lezopt
