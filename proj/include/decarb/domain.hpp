#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace decarb {

inline constexpr int kMaxPeriods = 50;

enum class PlantCategory { kRenewable, kFossil };

enum class FuelKind {
  kSolar,
  kHydro,
  kNaturalGas,
  kOil,
  kCoal,
  kBiomass,
  kBiogas,
  kMsw,
  kOther,
};

enum class FuelPhase { kSolid, kGas };

enum class NetKind { kEnergyProducing, kEnergyConsuming };

// Per-period series are stored 0-based: series[k - 1] holds period k.
using PeriodSeries = std::vector<double>;

struct PlanningHorizon {
  int num_periods = 0;
  std::vector<std::string> period_labels;  // optional, may be empty
};

struct PowerPlant {
  std::string id;
  PlantCategory category = PlantCategory::kFossil;
  FuelKind fuel = FuelKind::kOther;
  std::string fuel_label;  // as written in the workbook, used for cost lookup
  double lower_bound = 0.0;    // TWh/y
  double upper_bound = 0.0;    // TWh/y
  double co2_intensity = 0.0;  // Mt/TWh
  int commission_period = 1;
  // First period in which the plant no longer generates; K+1 means never.
  int decommission_period = 2;
  PeriodSeries op_cost;              // mil USD/TWh
  PeriodSeries fixed_capex;          // mil USD, charged when operating
  PeriodSeries capacity_capex;       // mil USD/TWh

  // True when the plant may generate in `period` (1-based).
  bool active_in(int period) const {
    return period >= commission_period && period < decommission_period;
  }
};

struct CcsTech {
  std::string id;
  PeriodSeries removal_ratio;
  PeriodSeries parasitic_loss;
  PeriodSeries gen_cost;
  PeriodSeries fixed_cost;
};

struct AltFuel {
  std::string id;
  FuelPhase phase = FuelPhase::kSolid;
  PeriodSeries co2_intensity;
  PeriodSeries cost;
  PeriodSeries fixed_cost;
};

struct RenewableTech {
  std::string id;
  PeriodSeries co2_intensity;
  PeriodSeries op_cost;
  PeriodSeries availability_cap;  // TWh/y
  PeriodSeries fixed_capex;
  PeriodSeries capacity_capex;
};

struct NetTech {
  std::string id;
  NetKind kind = NetKind::kEnergyProducing;
  PeriodSeries co2_intensity;  // negative
  PeriodSeries op_cost;
  PeriodSeries availability_cap;
  PeriodSeries fixed_capex;
  PeriodSeries capacity_capex;
};

struct PeriodParams {
  double demand = 0.0;          // TWh/y
  double emission_limit = 0.0;  // Mt/y
  double budget = 0.0;          // mil USD/y
};

// YES/NO deployment flags keyed by technology id.
class AvailabilityMatrix {
 public:
  void set(const std::string& tech_id, std::vector<bool> flags) {
    flags_[tech_id] = std::move(flags);
  }
  bool has(const std::string& tech_id) const {
    return flags_.count(tech_id) != 0;
  }
  // Unknown ids and out-of-range periods read as unavailable.
  bool available(const std::string& tech_id, int period) const;
  const std::map<std::string, std::vector<bool>>& entries() const {
    return flags_;
  }

  bool operator==(const AvailabilityMatrix&) const = default;

 private:
  std::map<std::string, std::vector<bool>> flags_;
};

struct Instance {
  PlanningHorizon horizon;
  std::vector<PowerPlant> plants;
  std::vector<CcsTech> ccs_techs;
  std::vector<AltFuel> alt_fuels;
  std::vector<RenewableTech> renewables;
  std::vector<NetTech> nets;
  std::vector<PeriodParams> period_params;
  AvailabilityMatrix availability;
  double aff = 1.0;

  int num_periods() const { return horizon.num_periods; }

  // Convenience views over alt_fuels / nets filtered by phase or kind, in
  // their original order.
  std::vector<const AltFuel*> solid_fuels() const;
  std::vector<const AltFuel*> gas_fuels() const;
  std::vector<const NetTech*> ep_nets() const;
  std::vector<const NetTech*> ec_nets() const;
};

bool operator==(const PlanningHorizon&, const PlanningHorizon&);
bool operator==(const PowerPlant&, const PowerPlant&);
bool operator==(const CcsTech&, const CcsTech&);
bool operator==(const AltFuel&, const AltFuel&);
bool operator==(const RenewableTech&, const RenewableTech&);
bool operator==(const NetTech&, const NetTech&);
bool operator==(const PeriodParams&, const PeriodParams&);
bool operator==(const Instance&, const Instance&);

struct Violation {
  std::string table;
  std::string row;
  std::string column;
  std::string rule;

  std::string to_string() const;
};

// Checks every data invariant; an empty result means the instance is usable.
std::vector<Violation> validate_instance(const Instance& instance);

std::string_view to_string(PlantCategory category);
std::string_view to_string(FuelKind fuel);
std::string_view to_string(FuelPhase phase);
std::string_view to_string(NetKind kind);

std::optional<PlantCategory> parse_plant_category(std::string_view text);
// Maps a free-form fuel label ("Natural Gas", "hydropower", "MSW") onto a
// FuelKind; unrecognised labels map to kOther.
FuelKind parse_fuel_kind(std::string_view text);

// Lower-cased label with runs of spaces, '-' and '_' collapsed to one '_'.
std::string normalize_label(std::string_view text);

}  // namespace decarb
