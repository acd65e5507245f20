#include "lezopt/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "lezopt/errors.hpp"

namespace lezopt {

using nlohmann::json;

void Scenario::validate() const {
  if (zones < 1) throw ValidationError("zones must be >= 1");
  if (max_age < 1) throw ValidationError("max_age must be >= 1");
  if (horizon < 1) throw ValidationError("years must be >= 1");

  topology.validate();
  if (topology.zone_count != zones)
    throw StructuralError("topology zone count does not match scenario zones");
  behavior.validate();
  exogenous.validate(max_age, zones, horizon);

  if (static_cast<int>(initial_ban_age.size()) != zones)
    throw StructuralError("initial.ban_age must list every zone");
  for (int z = 0; z < zones; ++z)
    if (initial_ban_age[z] < 0 || initial_ban_age[z] > no_ban()) {
      std::ostringstream os;
      os << "initial.ban_age[" << z << "] = " << initial_ban_age[z] << " outside [0, "
         << no_ban() << "]";
      throw ValidationError(os.str());
    }

  if (!initial_age_profile.empty()) {
    if (static_cast<int>(initial_age_profile.size()) != max_age + 1)
      throw StructuralError("initial.age_distribution must cover ages 0..max_age");
    if (static_cast<int>(initial_thermal_totals.size()) != zones ||
        static_cast<int>(initial_electric_totals.size()) != zones)
      throw StructuralError("initial stock totals must list every zone");
    double sum = 0.0;
    for (int a = 0; a <= max_age; ++a) {
      if (!(initial_age_profile[a] >= 0.0)) {
        std::ostringstream os;
        os << "initial.age_distribution[" << a << "] = " << initial_age_profile[a]
           << " must be >= 0";
        throw ValidationError(os.str());
      }
      sum += initial_age_profile[a];
    }
    if (!(sum > 0.0)) throw ValidationError("initial.age_distribution must have positive mass");
  }

  initial_stock.validate();
  if (initial_stock.max_age() != max_age || initial_stock.zones() != zones)
    throw StructuralError("initial stock dimensions do not match scenario");
  if (initial_stock.year != base_year)
    throw StructuralError("initial stock year does not match base_year");
}

void Scenario::rebuild_initial_stock() {
  initial_stock = expand_initial_stock(base_year, max_age, zones, initial_thermal_totals,
                                       initial_electric_totals, initial_age_profile);
}

bool Scenario::operator==(const Scenario& o) const {
  return name == o.name && base_year == o.base_year && horizon == o.horizon &&
         max_age == o.max_age && zones == o.zones &&
         topology.neighbors == o.topology.neighbors &&
         topology.max_tightening == o.topology.max_tightening &&
         exogenous.demand == o.exogenous.demand && exogenous.mileage == o.exogenous.mileage &&
         exogenous.survival == o.exogenous.survival &&
         exogenous.emission_factor == o.exogenous.emission_factor &&
         exogenous.utility_thermal == o.exogenous.utility_thermal &&
         exogenous.utility_electric == o.exogenous.utility_electric &&
         exogenous.logit_scale == o.exogenous.logit_scale &&
         behavior.banned_ratio == o.behavior.banned_ratio &&
         behavior.baseline_ratio == o.behavior.baseline_ratio &&
         behavior.neighbor_step == o.behavior.neighbor_step &&
         behavior.neighbor_cap == o.behavior.neighbor_cap &&
         initial_ban_age == o.initial_ban_age &&
         initial_thermal_totals == o.initial_thermal_totals &&
         initial_electric_totals == o.initial_electric_totals &&
         initial_age_profile == o.initial_age_profile && initial_stock == o.initial_stock;
}

std::vector<double> default_age_profile(const std::vector<double>& survival, int max_age) {
  std::vector<double> w(max_age + 1, 0.0);
  w[0] = 1.0;
  for (int a = 1; a <= max_age; ++a) w[a] = w[a - 1] * survival[a];
  double sum = 0.0;
  for (double x : w) sum += x;
  if (!(sum > 0.0)) throw ValidationError("survival rates leave an empty age profile");
  for (double& x : w) x /= sum;
  return w;
}

FleetState expand_initial_stock(int base_year, int max_age, int zones,
                                const std::vector<double>& thermal_totals,
                                const std::vector<double>& electric_totals,
                                const std::vector<double>& age_profile) {
  if (static_cast<int>(thermal_totals.size()) != zones ||
      static_cast<int>(electric_totals.size()) != zones)
    throw StructuralError("initial stock totals must list every zone");
  if (static_cast<int>(age_profile.size()) != max_age + 1)
    throw StructuralError("initial.age_distribution must cover ages 0..max_age");
  double sum = 0.0;
  for (double w : age_profile) {
    if (!(w >= 0.0)) throw ValidationError("initial.age_distribution weights must be >= 0");
    sum += w;
  }
  if (!(sum > 0.0)) throw ValidationError("initial.age_distribution must have positive mass");

  FleetState state(base_year, max_age, zones);
  for (int z = 0; z < zones; ++z)
    for (int a = 0; a <= max_age; ++a) {
      const double share = age_profile[a] / sum;
      state.stock(kThermal, a, z) = thermal_totals[z] * share;
      state.stock(kElectric, a, z) = electric_totals[z] * share;
    }
  return state;
}

namespace {

[[noreturn]] void fail(const std::string& ctx, const std::string& msg) {
  throw ValidationError("scenario: " + ctx + ": " + msg);
}

const json& require(const json& j, const char* key, const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end()) fail(ctx, std::string("missing field '") + key + "'");
  return *it;
}

double number_at(const json& j, const std::string& ctx) {
  if (!j.is_number()) fail(ctx, "expected a number");
  return j.get<double>();
}

int int_at(const json& j, const std::string& ctx) {
  if (!j.is_number_integer()) fail(ctx, "expected an integer");
  return j.get<int>();
}

std::vector<double> number_array(const json& j, int size, const std::string& ctx) {
  if (!j.is_array() || static_cast<int>(j.size()) != size) {
    std::ostringstream os;
    os << "expected an array of " << size << " numbers";
    fail(ctx, os.str());
  }
  std::vector<double> out(size);
  for (int i = 0; i < size; ++i) out[i] = number_at(j[i], ctx + "[" + std::to_string(i) + "]");
  return out;
}

std::vector<int> int_array(const json& j, int size, const std::string& ctx) {
  if (!j.is_array() || static_cast<int>(j.size()) != size) {
    std::ostringstream os;
    os << "expected an array of " << size << " integers";
    fail(ctx, os.str());
  }
  std::vector<int> out(size);
  for (int i = 0; i < size; ++i) out[i] = int_at(j[i], ctx + "[" + std::to_string(i) + "]");
  return out;
}

// A per-year series may be written as one scalar (constant over time) or as
// a full array covering t = 0..horizon.
std::vector<double> scalar_or_series(const json& j, int years, const std::string& ctx) {
  if (j.is_number()) return std::vector<double>(years, j.get<double>());
  return number_array(j, years, ctx);
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("scenario: cannot open file " + path.string());
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario: parse error: ") + e.what());
  }
  if (!root.is_object()) throw ValidationError("scenario: top level must be an object");

  Scenario sc;
  sc.name = root.value("name", path.stem().string());
  sc.base_year = int_at(require(root, "base_year", "root"), "base_year");
  sc.horizon = int_at(require(root, "years", "root"), "years");
  sc.max_age = int_at(require(root, "max_age", "root"), "max_age");
  const int years = sc.horizon + 1;

  {
    const json& jz = require(root, "zones", "root");
    sc.zones = int_at(require(jz, "count", "zones"), "zones.count");
    if (sc.zones < 1) fail("zones.count", "must be >= 1");
    sc.topology.zone_count = sc.zones;
    const json& jn = require(jz, "neighbors", "zones");
    if (!jn.is_array() || static_cast<int>(jn.size()) != sc.zones)
      fail("zones.neighbors", "expected one adjacency list per zone");
    sc.topology.neighbors.resize(sc.zones);
    for (int z = 0; z < sc.zones; ++z) {
      const json& lst = jn[z];
      if (!lst.is_array()) fail("zones.neighbors[" + std::to_string(z) + "]", "expected an array");
      for (const auto& e : lst) {
        const int id = int_at(e, "zones.neighbors[" + std::to_string(z) + "]");
        if (id < 1 || id > sc.zones)
          fail("zones.neighbors[" + std::to_string(z) + "]",
               "zone ids are 1-based and must be within 1..count");
        sc.topology.neighbors[z].push_back(id - 1);  // file uses 1-based ids
      }
    }
    sc.topology.max_tightening =
        int_array(require(jz, "max_tightening", "zones"), sc.zones, "zones.max_tightening");
  }

  if (auto it = root.find("behavior"); it != root.end()) {
    const json& jb = *it;
    sc.behavior.banned_ratio =
        number_at(require(jb, "disposal_banned", "behavior"), "behavior.disposal_banned");
    sc.behavior.baseline_ratio =
        number_at(require(jb, "disposal_baseline", "behavior"), "behavior.disposal_baseline");
    sc.behavior.neighbor_step = number_at(require(jb, "disposal_neighbor_step", "behavior"),
                                          "behavior.disposal_neighbor_step");
    sc.behavior.neighbor_cap = number_at(require(jb, "disposal_neighbor_cap", "behavior"),
                                         "behavior.disposal_neighbor_cap");
  } else {
    sc.behavior = BehaviorParams{};
    sc.provenance.behavior_defaulted = true;
    sc.provenance.notes.push_back("behavior: defaulted");
  }

  {
    const json& je = require(root, "exogenous", "root");
    const json& jd = require(je, "demand_vkm", "exogenous");
    if (!jd.is_array() || static_cast<int>(jd.size()) != sc.zones)
      fail("exogenous.demand_vkm", "expected one series per zone");
    sc.exogenous.demand = Matrix(sc.zones, years);
    for (int z = 0; z < sc.zones; ++z) {
      auto series =
          scalar_or_series(jd[z], years, "exogenous.demand_vkm[" + std::to_string(z) + "]");
      for (int t = 0; t < years; ++t) sc.exogenous.demand(z, t) = series[t];
    }
    sc.exogenous.mileage = scalar_or_series(require(je, "mileage_km_per_vehicle", "exogenous"),
                                            years, "exogenous.mileage_km_per_vehicle");
    auto eta = number_array(require(je, "survival", "exogenous"), sc.max_age,
                            "exogenous.survival");
    sc.exogenous.survival.assign(sc.max_age + 1, 1.0);
    for (int a = 1; a <= sc.max_age; ++a) sc.exogenous.survival[a] = eta[a - 1];

    const json& jf = require(je, "emission_factor_gco2_per_km", "exogenous");
    if (!jf.is_array() || static_cast<int>(jf.size()) != sc.max_age + 1)
      fail("exogenous.emission_factor_gco2_per_km", "expected one row per age 0..max_age");
    sc.exogenous.emission_factor = Matrix(sc.max_age + 1, years);
    for (int a = 0; a <= sc.max_age; ++a) {
      auto row = scalar_or_series(
          jf[a], years, "exogenous.emission_factor_gco2_per_km[" + std::to_string(a) + "]");
      for (int t = 0; t < years; ++t) sc.exogenous.emission_factor(a, t) = row[t];
    }
    sc.exogenous.utility_thermal = scalar_or_series(require(je, "utility_thermal", "exogenous"),
                                                    years, "exogenous.utility_thermal");
    sc.exogenous.utility_electric = scalar_or_series(
        require(je, "utility_electric", "exogenous"), years, "exogenous.utility_electric");
    sc.exogenous.logit_scale =
        number_at(require(je, "logit_scale", "exogenous"), "exogenous.logit_scale");
  }

  {
    const json& ji = require(root, "initial", "root");
    sc.initial_ban_age = int_array(require(ji, "ban_age", "initial"), sc.zones, "initial.ban_age");
    auto thermal = number_array(require(ji, "thermal_stock", "initial"), sc.zones,
                                "initial.thermal_stock");
    auto electric = number_array(require(ji, "electric_stock", "initial"), sc.zones,
                                 "initial.electric_stock");
    std::vector<double> profile;
    if (auto it = ji.find("age_distribution"); it != ji.end()) {
      profile = number_array(*it, sc.max_age + 1, "initial.age_distribution");
    } else {
      profile = default_age_profile(sc.exogenous.survival, sc.max_age);
      sc.provenance.age_distribution_defaulted = true;
      sc.provenance.notes.push_back(
          "initial.age_distribution: defaulted to survival-consistent profile");
    }
    sc.initial_thermal_totals = std::move(thermal);
    sc.initial_electric_totals = std::move(electric);
    sc.initial_age_profile = std::move(profile);
    sc.rebuild_initial_stock();
  }

  sc.validate();
  return sc;
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  const int years = scenario.horizon + 1;
  json root;
  root["name"] = scenario.name;
  root["base_year"] = scenario.base_year;
  root["years"] = scenario.horizon;
  root["max_age"] = scenario.max_age;

  json jz;
  jz["count"] = scenario.zones;
  json jn = json::array();
  for (int z = 0; z < scenario.zones; ++z) {
    json lst = json::array();
    for (int n : scenario.topology.neighbors[z]) lst.push_back(n + 1);
    jn.push_back(lst);
  }
  jz["neighbors"] = jn;
  jz["max_tightening"] = scenario.topology.max_tightening;
  root["zones"] = jz;

  if (!scenario.provenance.behavior_defaulted) {
    json jb;
    jb["disposal_banned"] = scenario.behavior.banned_ratio;
    jb["disposal_baseline"] = scenario.behavior.baseline_ratio;
    jb["disposal_neighbor_step"] = scenario.behavior.neighbor_step;
    jb["disposal_neighbor_cap"] = scenario.behavior.neighbor_cap;
    root["behavior"] = jb;
  }

  json je;
  json jd = json::array();
  for (int z = 0; z < scenario.zones; ++z) {
    json series = json::array();
    for (int t = 0; t < years; ++t) series.push_back(scenario.exogenous.demand(z, t));
    jd.push_back(series);
  }
  je["demand_vkm"] = jd;
  je["mileage_km_per_vehicle"] = scenario.exogenous.mileage;
  std::vector<double> eta(scenario.exogenous.survival.begin() + 1,
                          scenario.exogenous.survival.end());
  je["survival"] = eta;
  json jf = json::array();
  for (int a = 0; a <= scenario.max_age; ++a) {
    json row = json::array();
    for (int t = 0; t < years; ++t) row.push_back(scenario.exogenous.emission_factor(a, t));
    jf.push_back(row);
  }
  je["emission_factor_gco2_per_km"] = jf;
  je["utility_thermal"] = scenario.exogenous.utility_thermal;
  je["utility_electric"] = scenario.exogenous.utility_electric;
  je["logit_scale"] = scenario.exogenous.logit_scale;
  root["exogenous"] = je;

  if (scenario.initial_age_profile.empty())
    throw ValidationError(
        "scenario: cannot serialize a tensor-only scenario (no totals + age profile)");
  json ji;
  ji["ban_age"] = scenario.initial_ban_age;
  ji["thermal_stock"] = scenario.initial_thermal_totals;
  ji["electric_stock"] = scenario.initial_electric_totals;
  // A defaulted profile is omitted so the file round-trips through the same
  // defaulting rule.
  if (!scenario.provenance.age_distribution_defaulted)
    ji["age_distribution"] = scenario.initial_age_profile;
  root["initial"] = ji;

  std::ofstream out(path);
  if (!out) throw ValidationError("scenario: cannot write file " + path.string());
  out << root.dump(2) << "\n";
}

ControlSequence no_new_restriction_control(const Scenario& scenario) {
  return ControlSequence(scenario.zones, scenario.horizon, -1);
}

Scenario no_lez_variant(const Scenario& scenario) {
  Scenario out = scenario;
  out.name = scenario.name + "_no_lez";
  std::fill(out.initial_ban_age.begin(), out.initial_ban_age.end(), out.no_ban());
  out.behavior.baseline_ratio = 0.0;  // nothing to anticipate in a world without LEZs
  return out;
}

}  // namespace lezopt
