#include "decarb/domain.hpp"

#include <cctype>
#include <cmath>
#include <set>

#include <fmt/format.h>

namespace decarb {

bool AvailabilityMatrix::available(const std::string& tech_id,
                                   int period) const {
  const auto it = flags_.find(tech_id);
  if (it == flags_.end()) return false;
  if (period < 1 || period > static_cast<int>(it->second.size())) return false;
  return it->second[period - 1];
}

namespace {

template <typename T, typename Pred>
std::vector<const T*> filter(const std::vector<T>& items, Pred pred) {
  std::vector<const T*> out;
  for (const T& item : items) {
    if (pred(item)) out.push_back(&item);
  }
  return out;
}

}  // namespace

std::vector<const AltFuel*> Instance::solid_fuels() const {
  return filter(alt_fuels,
                [](const AltFuel& f) { return f.phase == FuelPhase::kSolid; });
}
std::vector<const AltFuel*> Instance::gas_fuels() const {
  return filter(alt_fuels,
                [](const AltFuel& f) { return f.phase == FuelPhase::kGas; });
}
std::vector<const NetTech*> Instance::ep_nets() const {
  return filter(nets, [](const NetTech& n) {
    return n.kind == NetKind::kEnergyProducing;
  });
}
std::vector<const NetTech*> Instance::ec_nets() const {
  return filter(nets, [](const NetTech& n) {
    return n.kind == NetKind::kEnergyConsuming;
  });
}

bool operator==(const PlanningHorizon& a, const PlanningHorizon& b) {
  return a.num_periods == b.num_periods && a.period_labels == b.period_labels;
}
bool operator==(const PowerPlant& a, const PowerPlant& b) {
  return a.id == b.id && a.category == b.category && a.fuel == b.fuel &&
         a.fuel_label == b.fuel_label && a.lower_bound == b.lower_bound &&
         a.upper_bound == b.upper_bound && a.co2_intensity == b.co2_intensity &&
         a.commission_period == b.commission_period &&
         a.decommission_period == b.decommission_period &&
         a.op_cost == b.op_cost && a.fixed_capex == b.fixed_capex &&
         a.capacity_capex == b.capacity_capex;
}
bool operator==(const CcsTech& a, const CcsTech& b) {
  return a.id == b.id && a.removal_ratio == b.removal_ratio &&
         a.parasitic_loss == b.parasitic_loss && a.gen_cost == b.gen_cost &&
         a.fixed_cost == b.fixed_cost;
}
bool operator==(const AltFuel& a, const AltFuel& b) {
  return a.id == b.id && a.phase == b.phase &&
         a.co2_intensity == b.co2_intensity && a.cost == b.cost &&
         a.fixed_cost == b.fixed_cost;
}
bool operator==(const RenewableTech& a, const RenewableTech& b) {
  return a.id == b.id && a.co2_intensity == b.co2_intensity &&
         a.op_cost == b.op_cost && a.availability_cap == b.availability_cap &&
         a.fixed_capex == b.fixed_capex && a.capacity_capex == b.capacity_capex;
}
bool operator==(const NetTech& a, const NetTech& b) {
  return a.id == b.id && a.kind == b.kind &&
         a.co2_intensity == b.co2_intensity && a.op_cost == b.op_cost &&
         a.availability_cap == b.availability_cap &&
         a.fixed_capex == b.fixed_capex && a.capacity_capex == b.capacity_capex;
}
bool operator==(const PeriodParams& a, const PeriodParams& b) {
  return a.demand == b.demand && a.emission_limit == b.emission_limit &&
         a.budget == b.budget;
}
bool operator==(const Instance& a, const Instance& b) {
  return a.horizon == b.horizon && a.plants == b.plants &&
         a.ccs_techs == b.ccs_techs && a.alt_fuels == b.alt_fuels &&
         a.renewables == b.renewables && a.nets == b.nets &&
         a.period_params == b.period_params &&
         a.availability == b.availability && a.aff == b.aff;
}

std::string Violation::to_string() const {
  return fmt::format("{}: row '{}', column '{}': {}", table, row, column, rule);
}

namespace {

class Checker {
 public:
  explicit Checker(int num_periods) : num_periods_(num_periods) {}

  void add(std::string table, std::string row, std::string column,
           std::string rule) {
    out_.push_back({std::move(table), std::move(row), std::move(column),
                    std::move(rule)});
  }

  // Checks length and finiteness; returns false when the series cannot be
  // indexed by period.
  bool series(const std::string& table, const std::string& row,
              const PeriodSeries& values) {
    if (static_cast<int>(values.size()) != num_periods_) {
      add(table, row, "*",
          fmt::format("expected {} period values, found {}", num_periods_,
                      values.size()));
      return false;
    }
    bool ok = true;
    for (int k = 0; k < num_periods_; ++k) {
      if (!std::isfinite(values[k])) {
        add(table, row, std::to_string(k + 1), "value is not finite");
        ok = false;
      }
    }
    return ok;
  }

  template <typename Pred>
  void each_period(const std::string& table, const std::string& row,
                   const PeriodSeries& values, Pred pred,
                   const std::string& rule) {
    if (!series(table, row, values)) return;
    for (int k = 0; k < num_periods_; ++k) {
      if (!pred(values[k])) add(table, row, std::to_string(k + 1), rule);
    }
  }

  std::vector<Violation> take() { return std::move(out_); }

 private:
  int num_periods_;
  std::vector<Violation> out_;
};

template <typename T>
void check_unique_ids(Checker& check, const std::string& table,
                      const std::vector<T>& items) {
  std::set<std::string> seen;
  for (const T& item : items) {
    if (item.id.empty()) check.add(table, item.id, "id", "empty id");
    if (!seen.insert(item.id).second) {
      check.add(table, item.id, "id", "duplicate id");
    }
  }
}

}  // namespace

std::vector<Violation> validate_instance(const Instance& instance) {
  const int K = instance.num_periods();
  Checker check(K);

  if (K < 1 || K > kMaxPeriods) {
    check.add("RUN_CONFIG", "num_periods", "value",
              fmt::format("num_periods must be in 1..{}", kMaxPeriods));
    // Nothing period-indexed can be checked meaningfully.
    return check.take();
  }
  if (!instance.horizon.period_labels.empty() &&
      static_cast<int>(instance.horizon.period_labels.size()) != K) {
    check.add("RUN_CONFIG", "period_labels", "value",
              "period label count differs from num_periods");
  }
  if (!std::isfinite(instance.aff) || instance.aff < 0.0) {
    check.add("RUN_CONFIG", "aff", "value", "aff must be finite and >= 0");
  }

  if (instance.plants.empty()) {
    check.add("PLANT_DATA", "*", "*", "at least one plant is required");
  }
  check_unique_ids(check, "PLANT_DATA", instance.plants);
  for (const PowerPlant& p : instance.plants) {
    if (!std::isfinite(p.lower_bound) || p.lower_bound < 0.0) {
      check.add("PLANT_DATA", p.id, "Lower Bound", "lower_bound must be >= 0");
    }
    if (!std::isfinite(p.upper_bound)) {
      check.add("PLANT_DATA", p.id, "Upper Bound", "upper_bound is not finite");
    }
    if (p.lower_bound > p.upper_bound) {
      check.add("PLANT_DATA", p.id, "Lower Bound", "lower_bound > upper_bound");
    }
    if (!std::isfinite(p.co2_intensity) || p.co2_intensity < 0.0) {
      check.add("PLANT_DATA", p.id, "CO2 Intensity", "co2_intensity must be >= 0");
    }
    if (p.commission_period < 1) {
      check.add("PLANT_DATA", p.id, "CM",
                "CM_i must be at least 1");
    }
    if (p.decommission_period > K + 1) {
      check.add("PLANT_DATA", p.id, "DCM",
                fmt::format("DCM_i must be at most K+1 = {}", K + 1));
    }
    if (p.commission_period >= p.decommission_period) {
      check.add("PLANT_DATA", p.id, "DCM",
                "CM_i must precede DCM_i");
    }
    check.series("FUEL_COST_DATA", p.id, p.op_cost);
    check.series("CAPEX_DATA_1", p.id, p.fixed_capex);
    check.series("CAPEX_DATA_2", p.id, p.capacity_capex);
  }

  check_unique_ids(check, "CCS_DATA", instance.ccs_techs);
  for (const CcsTech& c : instance.ccs_techs) {
    check.each_period(
        "CCS_DATA", c.id + ":removal_ratio", c.removal_ratio,
        [](double v) { return v > 0.0 && v < 1.0; },
        "removal ratio must lie in (0, 1)");
    check.each_period(
        "CCS_DATA", c.id + ":parasitic_loss", c.parasitic_loss,
        [](double v) { return v >= 0.0 && v < 1.0; },
        "parasitic loss must lie in [0, 1)");
    check.series("CCS_DATA", c.id + ":gen_cost", c.gen_cost);
    check.series("CCS_DATA", c.id + ":fixed_cost", c.fixed_cost);
  }

  check_unique_ids(check, "ALT_FUELS", instance.alt_fuels);
  for (const AltFuel& f : instance.alt_fuels) {
    const bool solid = f.phase == FuelPhase::kSolid;
    check.each_period(
        solid ? "ALT_SOLID_CI" : "ALT_GAS_CI", f.id, f.co2_intensity,
        [](double v) { return v >= 0.0; }, "CO2 intensity must be >= 0");
    check.series(solid ? "ALT_SOLID_COST" : "ALT_GAS_COST", f.id, f.cost);
    check.series(solid ? "ALT_SOLID_COST" : "ALT_GAS_COST", f.id + ":fixed_cost",
                 f.fixed_cost);
  }

  check_unique_ids(check, "RENEWABLE_CI_DATA", instance.renewables);
  for (const RenewableTech& r : instance.renewables) {
    check.each_period(
        "RENEWABLE_CI_DATA", r.id, r.co2_intensity,
        [](double v) { return v >= 0.0; }, "CO2 intensity must be >= 0");
    check.series("RENEWABLE_COST_DATA", r.id, r.op_cost);
    check.each_period(
        "RENEWABLE_COST_DATA", r.id + ":availability", r.availability_cap,
        [](double v) { return v >= 0.0; }, "availability cap must be >= 0");
    check.series("CAPEX_DATA_1", r.id, r.fixed_capex);
    check.series("CAPEX_DATA_2", r.id, r.capacity_capex);
  }

  check_unique_ids(check, "NET_CI_DATA", instance.nets);
  for (const NetTech& n : instance.nets) {
    check.each_period(
        "NET_CI_DATA", n.id, n.co2_intensity, [](double v) { return v < 0.0; },
        "NET CO2 intensity must be negative");
    check.series("NET_COST_DATA", n.id, n.op_cost);
    check.each_period(
        "NET_COST_DATA", n.id + ":availability", n.availability_cap,
        [](double v) { return v >= 0.0; }, "availability cap must be >= 0");
    check.series("CAPEX_DATA_1", n.id, n.fixed_capex);
    check.series("CAPEX_DATA_2", n.id, n.capacity_capex);
  }

  if (static_cast<int>(instance.period_params.size()) != K) {
    check.add("ENERGY_PLANNING_DATA", "*", "*",
              fmt::format("expected {} periods, found {}", K,
                          instance.period_params.size()));
  } else {
    for (int k = 0; k < K; ++k) {
      const PeriodParams& pp = instance.period_params[k];
      const std::string col = std::to_string(k + 1);
      if (!std::isfinite(pp.demand) || pp.demand < 0.0) {
        check.add("ENERGY_PLANNING_DATA", "Demand", col, "demand must be >= 0");
      }
      if (!std::isfinite(pp.emission_limit)) {
        check.add("ENERGY_PLANNING_DATA", "CO2 Emissions Limit", col,
                  "emission limit is not finite");
      }
      if (!std::isfinite(pp.budget) || pp.budget < 0.0) {
        check.add("ENERGY_PLANNING_DATA", "Budget", col, "budget must be >= 0");
      }
    }
  }

  // Availability is keyed by id, so non-plant ids must not collide.
  std::set<std::string> tech_ids;
  auto require_availability = [&](const std::string& id) {
    if (!tech_ids.insert(id).second) {
      check.add("TECH_IMPLEMENTATION_TIME", id, "*",
                "technology id is used by more than one technology table");
    }
    const auto& entries = instance.availability.entries();
    const auto it = entries.find(id);
    if (it == entries.end()) {
      check.add("TECH_IMPLEMENTATION_TIME", id, "*",
                "no availability row for technology");
    } else if (static_cast<int>(it->second.size()) != K) {
      check.add("TECH_IMPLEMENTATION_TIME", id, "*",
                fmt::format("expected {} availability flags, found {}", K,
                            it->second.size()));
    }
  };
  for (const auto& t : instance.renewables) require_availability(t.id);
  for (const auto& t : instance.alt_fuels) require_availability(t.id);
  for (const auto& t : instance.ccs_techs) require_availability(t.id);
  for (const auto& t : instance.nets) require_availability(t.id);

  return check.take();
}

std::string_view to_string(PlantCategory category) {
  switch (category) {
    case PlantCategory::kRenewable:
      return "renewable";
    case PlantCategory::kFossil:
      return "fossil";
  }
  return "fossil";
}

std::string_view to_string(FuelKind fuel) {
  switch (fuel) {
    case FuelKind::kSolar:
      return "solar";
    case FuelKind::kHydro:
      return "hydro";
    case FuelKind::kNaturalGas:
      return "natural_gas";
    case FuelKind::kOil:
      return "oil";
    case FuelKind::kCoal:
      return "coal";
    case FuelKind::kBiomass:
      return "biomass";
    case FuelKind::kBiogas:
      return "biogas";
    case FuelKind::kMsw:
      return "msw";
    case FuelKind::kOther:
      return "other";
  }
  return "other";
}

std::string_view to_string(FuelPhase phase) {
  return phase == FuelPhase::kSolid ? "solid" : "gas";
}

std::string_view to_string(NetKind kind) {
  return kind == NetKind::kEnergyProducing ? "EP" : "EC";
}

std::string normalize_label(std::string_view text) {
  std::string out;
  bool pending_sep = false;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c) || ch == '_' || ch == '-') {
      pending_sep = !out.empty();
      continue;
    }
    if (pending_sep) {
      out.push_back('_');
      pending_sep = false;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::optional<PlantCategory> parse_plant_category(std::string_view text) {
  const std::string key = normalize_label(text);
  if (key == "renewable" || key == "ren" || key == "renewables") {
    return PlantCategory::kRenewable;
  }
  if (key == "fossil" || key == "fossil_fuel" || key == "fossil_fuels") {
    return PlantCategory::kFossil;
  }
  return std::nullopt;
}

FuelKind parse_fuel_kind(std::string_view text) {
  const std::string key = normalize_label(text);
  if (key == "solar") return FuelKind::kSolar;
  if (key == "hydro" || key == "hydropower") return FuelKind::kHydro;
  if (key == "natural_gas" || key == "gas") return FuelKind::kNaturalGas;
  if (key == "oil") return FuelKind::kOil;
  if (key == "coal") return FuelKind::kCoal;
  if (key == "biomass") return FuelKind::kBiomass;
  if (key == "biogas") return FuelKind::kBiogas;
  if (key == "msw" || key == "municipal_solid_waste") return FuelKind::kMsw;
  return FuelKind::kOther;
}

}  // namespace decarb
