#pragma once

#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "decarb/constraint_family.hpp"
#include "decarb/domain.hpp"
#include "decarb/milp_problem.hpp"

namespace decarb {

enum class Objective { kMinBudget, kMinEmission };

std::string_view to_string(Objective objective);
// Accepts "min_budget" and "min_emission"; throws std::invalid_argument
// otherwise.
Objective parse_objective(std::string_view text);

enum class VarFamily {
  kGross,            // plant gross output
  kUnabated,         // plant output without mitigation
  kPlantOn,          // plant runs
  kCcsGross,         // plant output routed through a CCS retrofit
  kCcsNet,           // that output after parasitic loss
  kCcsOn,
  kSolidFuel,        // output from an alternative solid fuel
  kSolidOn,
  kGasFuel,          // output from an alternative gas fuel
  kGasOn,
  kRenewable,        // compensatory renewable deployment
  kRenewableOn,
  kEpNet,            // energy-producing NET deployment
  kEpNetOn,
  kEcNet,            // energy-consuming NET deployment
  kEcNetOn,
  kEmissions,        // period CO2 load
  kTotalCost,        // period total cost
  kPlantCost,
  kRenewableCost,
  kEpNetCost,
  kEcNetCost,
};

std::string_view to_string(VarFamily family);

// Identifies one model variable. `period` is 0-based; `entity` indexes the
// plant (plant families) or technology (renewable/NET families); `option`
// indexes the CCS technology or alternative fuel within its phase. Unused
// fields are -1.
struct VarKey {
  VarFamily family = VarFamily::kGross;
  int period = -1;
  int entity = -1;
  int option = -1;

  auto operator<=>(const VarKey&) const = default;
};

class VariableCatalog {
 public:
  // Returns the variable index, or -1 when no such variable exists.
  int find(const VarKey& key) const;
  // Like find() but throws std::out_of_range.
  int at(const VarKey& key) const;
  const VarKey& key(int var) const { return keys_.at(var); }
  int size() const { return static_cast<int>(keys_.size()); }

  int gross(int i, int k) const { return at({VarFamily::kGross, k, i}); }
  int unabated(int i, int k) const { return at({VarFamily::kUnabated, k, i}); }
  int plant_on(int i, int k) const { return at({VarFamily::kPlantOn, k, i}); }
  int ccs_gross(int i, int k, int n) const {
    return at({VarFamily::kCcsGross, k, i, n});
  }
  int ccs_net(int i, int k, int n) const {
    return at({VarFamily::kCcsNet, k, i, n});
  }
  int ccs_on(int i, int k, int n) const {
    return at({VarFamily::kCcsOn, k, i, n});
  }
  int solid(int i, int k, int s) const {
    return at({VarFamily::kSolidFuel, k, i, s});
  }
  int solid_on(int i, int k, int s) const {
    return at({VarFamily::kSolidOn, k, i, s});
  }
  int gas(int i, int k, int g) const {
    return at({VarFamily::kGasFuel, k, i, g});
  }
  int gas_on(int i, int k, int g) const {
    return at({VarFamily::kGasOn, k, i, g});
  }
  int renewable(int k, int r) const { return at({VarFamily::kRenewable, k, r}); }
  int renewable_on(int k, int r) const {
    return at({VarFamily::kRenewableOn, k, r});
  }
  int ep_net(int k, int p) const { return at({VarFamily::kEpNet, k, p}); }
  int ep_net_on(int k, int p) const { return at({VarFamily::kEpNetOn, k, p}); }
  int ec_net(int k, int q) const { return at({VarFamily::kEcNet, k, q}); }
  int ec_net_on(int k, int q) const { return at({VarFamily::kEcNetOn, k, q}); }
  int emissions(int k) const { return at({VarFamily::kEmissions, k}); }
  int total_cost(int k) const { return at({VarFamily::kTotalCost, k}); }
  int plant_cost(int k) const { return at({VarFamily::kPlantCost, k}); }
  int renewable_cost(int k) const { return at({VarFamily::kRenewableCost, k}); }
  int ep_net_cost(int k) const { return at({VarFamily::kEpNetCost, k}); }
  int ec_net_cost(int k) const { return at({VarFamily::kEcNetCost, k}); }

  // Registers a key; the returned index equals the previous size().
  int add(const VarKey& key);

 private:
  std::vector<VarKey> keys_;
  std::map<VarKey, int> index_;
};

struct BuildOptions {
  // Adds run-flag ratchets (plant_on[k+1] >= plant_on[k]) inside the
  // commissioned window. Implied by the output ratchet whenever the lower
  // bound is positive; tightens the LP relaxation.
  bool binary_ratchet = true;
};

struct PlanningModel {
  MilpProblem problem;
  VariableCatalog catalog;
  Objective objective = Objective::kMinBudget;
  std::vector<ConstraintFamily> row_family;  // parallel to problem.constraints

  int count_rows(ConstraintFamily family) const;
  int count_binaries() const;
};

// CO2 intensity of a plant's retrofitted output: emissions left after
// capture, spread over the net energy after parasitic loss. Throws
// std::invalid_argument when parasitic_loss >= 1.
double ccs_intensity(double plant_intensity, double removal_ratio,
                     double parasitic_loss);

// Which retrofit options a plant can take.
bool accepts_ccs(const PowerPlant& plant);
bool accepts_alt_fuel(const PowerPlant& plant, FuelPhase phase);

// Assembles the multiperiod planning MILP. Throws std::invalid_argument if
// the instance fails validate_instance().
PlanningModel build_model(const Instance& instance, Objective objective,
                          const BuildOptions& options = {});

}  // namespace decarb
