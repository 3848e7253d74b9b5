#include "decarb/model_builder.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace decarb {

std::string_view to_string(Objective objective) {
  return objective == Objective::kMinBudget ? "min_budget" : "min_emission";
}

Objective parse_objective(std::string_view text) {
  if (text == "min_budget") return Objective::kMinBudget;
  if (text == "min_emission") return Objective::kMinEmission;
  throw std::invalid_argument(fmt::format(
      "unknown objective '{}' (expected min_budget or min_emission)", text));
}

std::string_view to_string(VarFamily family) {
  switch (family) {
    case VarFamily::kGross: return "gross";
    case VarFamily::kUnabated: return "unabated";
    case VarFamily::kPlantOn: return "on";
    case VarFamily::kCcsGross: return "ccs";
    case VarFamily::kCcsNet: return "ccs_net";
    case VarFamily::kCcsOn: return "ccs_on";
    case VarFamily::kSolidFuel: return "solid";
    case VarFamily::kSolidOn: return "solid_on";
    case VarFamily::kGasFuel: return "gas";
    case VarFamily::kGasOn: return "gas_on";
    case VarFamily::kRenewable: return "renew";
    case VarFamily::kRenewableOn: return "renew_on";
    case VarFamily::kEpNet: return "ep";
    case VarFamily::kEpNetOn: return "ep_on";
    case VarFamily::kEcNet: return "ec";
    case VarFamily::kEcNetOn: return "ec_on";
    case VarFamily::kEmissions: return "emis";
    case VarFamily::kTotalCost: return "cost";
    case VarFamily::kPlantCost: return "cost_plant";
    case VarFamily::kRenewableCost: return "cost_renew";
    case VarFamily::kEpNetCost: return "cost_ep";
    case VarFamily::kEcNetCost: return "cost_ec";
  }
  return "?";
}

std::string_view to_string(ConstraintFamily family) {
  switch (family) {
    case ConstraintFamily::kDemand: return "demand";
    case ConstraintFamily::kPlantMinOutput: return "plant_min_output";
    case ConstraintFamily::kPlantMaxOutput: return "plant_max_output";
    case ConstraintFamily::kPlantWindow: return "plant_window";
    case ConstraintFamily::kPlantRatchet: return "plant_ratchet";
    case ConstraintFamily::kPlantOnRatchet: return "plant_on_ratchet";
    case ConstraintFamily::kCcsMax: return "ccs_max";
    case ConstraintFamily::kCcsTotal: return "ccs_total";
    case ConstraintFamily::kCcsRatchet: return "ccs_ratchet";
    case ConstraintFamily::kCcsNet: return "ccs_net";
    case ConstraintFamily::kSolidRatchet: return "solid_ratchet";
    case ConstraintFamily::kGasRatchet: return "gas_ratchet";
    case ConstraintFamily::kSolidMax: return "solid_max";
    case ConstraintFamily::kGasMax: return "gas_max";
    case ConstraintFamily::kPlantSplit: return "plant_split";
    case ConstraintFamily::kRenewableMax: return "renewable_max";
    case ConstraintFamily::kEpNetMax: return "ep_net_max";
    case ConstraintFamily::kEcNetMax: return "ec_net_max";
    case ConstraintFamily::kRenewableRatchet: return "renewable_ratchet";
    case ConstraintFamily::kEpNetRatchet: return "ep_net_ratchet";
    case ConstraintFamily::kEcNetRatchet: return "ec_net_ratchet";
    case ConstraintFamily::kEnergyBalance: return "energy_balance";
    case ConstraintFamily::kEmissions: return "emissions";
    case ConstraintFamily::kPlantCost: return "plant_cost";
    case ConstraintFamily::kRenewableCost: return "renewable_cost";
    case ConstraintFamily::kEpNetCost: return "ep_net_cost";
    case ConstraintFamily::kEcNetCost: return "ec_net_cost";
    case ConstraintFamily::kTotalCost: return "total_cost";
    case ConstraintFamily::kEmissionLimit: return "emission_limit";
    case ConstraintFamily::kBudget: return "budget";
    case ConstraintFamily::kAvailability: return "availability";
    case ConstraintFamily::kAttachment: return "attachment";
    case ConstraintFamily::kIntegrality: return "integrality";
    case ConstraintFamily::kBounds: return "bounds";
  }
  return "?";
}

int VariableCatalog::find(const VarKey& key) const {
  const auto it = index_.find(key);
  return it == index_.end() ? -1 : it->second;
}

int VariableCatalog::at(const VarKey& key) const {
  const int idx = find(key);
  if (idx < 0) {
    throw std::out_of_range(fmt::format(
        "no variable {}[entity={}, period={}, option={}]", to_string(key.family),
        key.entity, key.period, key.option));
  }
  return idx;
}

int VariableCatalog::add(const VarKey& key) {
  const int idx = size();
  if (!index_.emplace(key, idx).second) {
    throw std::logic_error("duplicate variable key");
  }
  keys_.push_back(key);
  return idx;
}

int PlanningModel::count_rows(ConstraintFamily family) const {
  int n = 0;
  for (ConstraintFamily f : row_family) n += (f == family);
  return n;
}

int PlanningModel::count_binaries() const {
  int n = 0;
  for (const Variable& v : problem.variables) n += v.is_binary();
  return n;
}

double ccs_intensity(double plant_intensity, double removal_ratio,
                     double parasitic_loss) {
  if (!(parasitic_loss < 1.0)) {
    throw std::invalid_argument(fmt::format(
        "parasitic loss {} leaves no net output (must be < 1)", parasitic_loss));
  }
  return plant_intensity * (1.0 - removal_ratio) / (1.0 - parasitic_loss);
}

bool accepts_ccs(const PowerPlant& plant) {
  return plant.category == PlantCategory::kFossil;
}

bool accepts_alt_fuel(const PowerPlant& plant, FuelPhase phase) {
  return phase == FuelPhase::kSolid ? plant.fuel == FuelKind::kCoal
                                    : plant.fuel == FuelKind::kNaturalGas;
}

namespace {

class Assembler {
 public:
  Assembler(const Instance& inst, Objective objective,
            const BuildOptions& options)
      : inst_(inst),
        options_(options),
        solids_(inst.solid_fuels()),
        gases_(inst.gas_fuels()),
        eps_(inst.ep_nets()),
        ecs_(inst.ec_nets()),
        K_(inst.num_periods()),
        I_(static_cast<int>(inst.plants.size())),
        N_(static_cast<int>(inst.ccs_techs.size())),
        R_(static_cast<int>(inst.renewables.size())) {
    model_.objective = objective;
  }

  PlanningModel build() {
    add_variables();
    add_plant_rows();
    add_ccs_rows();
    add_fuel_rows();
    add_compensatory_rows();
    add_system_rows();
    add_objective();
    return std::move(model_);
  }

 private:
  int S() const { return static_cast<int>(solids_.size()); }
  int G() const { return static_cast<int>(gases_.size()); }
  int P() const { return static_cast<int>(eps_.size()); }
  int Q() const { return static_cast<int>(ecs_.size()); }
  const VariableCatalog& cat() const { return model_.catalog; }

  bool plant_active(int i, int k) const {
    return inst_.plants[i].active_in(k + 1);
  }
  bool available(const std::string& id, int k) const {
    return inst_.availability.available(id, k + 1);
  }

  void var(VarKey key, double lower, double upper, bool integer, bool fixed) {
    std::string name;
    if (key.entity < 0) {
      name = fmt::format("{}[{}]", to_string(key.family), key.period + 1);
    } else if (key.option < 0) {
      name = fmt::format("{}[{},{}]", to_string(key.family), key.entity + 1,
                         key.period + 1);
    } else {
      name = fmt::format("{}[{},{},{}]", to_string(key.family), key.entity + 1,
                         key.period + 1, key.option + 1);
    }
    if (fixed) lower = upper = 0.0;
    model_.catalog.add(key);
    model_.problem.add_variable({std::move(name), lower, upper, integer, 0.0});
  }
  void flow(VarKey key, bool fixed) { var(key, 0.0, kInfinity, false, fixed); }
  void flag(VarKey key, bool fixed) { var(key, 0.0, 1.0, true, fixed); }

  void add_variables() {
    using F = VarFamily;
    for (F fam : {F::kGross, F::kUnabated, F::kPlantOn}) {
      for (int i = 0; i < I_; ++i) {
        for (int k = 0; k < K_; ++k) {
          const bool fixed = !plant_active(i, k);
          if (fam == F::kPlantOn) {
            flag({fam, k, i}, fixed);
          } else {
            flow({fam, k, i}, fixed);
          }
        }
      }
    }
    for (F fam : {F::kCcsGross, F::kCcsNet, F::kCcsOn}) {
      for (int i = 0; i < I_; ++i) {
        for (int k = 0; k < K_; ++k) {
          for (int n = 0; n < N_; ++n) {
            const bool fixed = !plant_active(i, k) ||
                               !accepts_ccs(inst_.plants[i]) ||
                               !available(inst_.ccs_techs[n].id, k);
            if (fam == F::kCcsOn) {
              flag({fam, k, i, n}, fixed);
            } else {
              flow({fam, k, i, n}, fixed);
            }
          }
        }
      }
    }
    add_fuel_variables(F::kSolidFuel, F::kSolidOn, FuelPhase::kSolid, solids_);
    add_fuel_variables(F::kGasFuel, F::kGasOn, FuelPhase::kGas, gases_);
    add_tech_variables(F::kRenewable, F::kRenewableOn, R_, [&](int r) {
      return inst_.renewables[r].id;
    });
    add_tech_variables(F::kEpNet, F::kEpNetOn, P(),
                       [&](int p) { return eps_[p]->id; });
    add_tech_variables(F::kEcNet, F::kEcNetOn, Q(),
                       [&](int q) { return ecs_[q]->id; });
    for (int k = 0; k < K_; ++k) {
      var({F::kEmissions, k}, -kInfinity, kInfinity, false, false);
    }
    for (F fam : {F::kTotalCost, F::kPlantCost, F::kRenewableCost,
                  F::kEpNetCost, F::kEcNetCost}) {
      for (int k = 0; k < K_; ++k) flow({fam, k}, false);
    }
  }

  void add_fuel_variables(VarFamily amount, VarFamily on, FuelPhase phase,
                          const std::vector<const AltFuel*>& fuels) {
    for (VarFamily fam : {amount, on}) {
      for (int i = 0; i < I_; ++i) {
        for (int k = 0; k < K_; ++k) {
          for (int s = 0; s < static_cast<int>(fuels.size()); ++s) {
            const bool fixed = !plant_active(i, k) ||
                               !accepts_alt_fuel(inst_.plants[i], phase) ||
                               !available(fuels[s]->id, k);
            if (fam == on) {
              flag({fam, k, i, s}, fixed);
            } else {
              flow({fam, k, i, s}, fixed);
            }
          }
        }
      }
    }
  }

  template <typename IdOf>
  void add_tech_variables(VarFamily amount, VarFamily on, int count,
                          IdOf id_of) {
    for (VarFamily fam : {amount, on}) {
      for (int t = 0; t < count; ++t) {
        for (int k = 0; k < K_; ++k) {
          const bool fixed = !available(id_of(t), k);
          if (fam == on) {
            flag({fam, k, t}, fixed);
          } else {
            flow({fam, k, t}, fixed);
          }
        }
      }
    }
  }

  // Row builder that drops exact-zero coefficients.
  struct Row {
    std::vector<LinearTerm> terms;
    Row& add(int var, double coef) {
      if (coef != 0.0) terms.push_back({var, coef});
      return *this;
    }
  };

  void emit(ConstraintFamily family, std::string name, Row row, RowSense sense,
            double rhs) {
    model_.problem.add_constraint(
        {std::move(name), std::move(row.terms), sense, rhs});
    model_.row_family.push_back(family);
  }

  std::string row_name(ConstraintFamily family, int a, int b = -1,
                       int c = -1) const {
    if (b < 0) return fmt::format("{}[{}]", to_string(family), a + 1);
    if (c < 0) return fmt::format("{}[{},{}]", to_string(family), a + 1, b + 1);
    return fmt::format("{}[{},{},{}]", to_string(family), a + 1, b + 1, c + 1);
  }

  // Ratchets apply while the plant is commissioned in both k and k+1.
  bool plant_ratchet_window(int i, int k) const {
    return plant_active(i, k) && plant_active(i, k + 1);
  }

  void add_plant_rows() {
    using CF = ConstraintFamily;
    for (int k = 0; k < K_; ++k) {
      Row row;
      for (int i = 0; i < I_; ++i) row.add(cat().gross(i, k), 1.0);
      emit(CF::kDemand, row_name(CF::kDemand, k), std::move(row),
           RowSense::kEqual, inst_.period_params[k].demand);
    }
    for (int i = 0; i < I_; ++i) {
      const PowerPlant& plant = inst_.plants[i];
      for (int k = 0; k < K_; ++k) {
        emit(CF::kPlantMinOutput, row_name(CF::kPlantMinOutput, i, k),
             Row{}.add(cat().gross(i, k), 1.0)
                 .add(cat().plant_on(i, k), -plant.lower_bound),
             RowSense::kGreaterEqual, 0.0);
        emit(CF::kPlantMaxOutput, row_name(CF::kPlantMaxOutput, i, k),
             Row{}.add(cat().gross(i, k), 1.0)
                 .add(cat().plant_on(i, k), -plant.upper_bound),
             RowSense::kLessEqual, 0.0);
      }
    }
    for (int i = 0; i < I_; ++i) {
      for (int k = 0; k + 1 < K_; ++k) {
        if (!plant_ratchet_window(i, k)) continue;
        emit(CF::kPlantRatchet, row_name(CF::kPlantRatchet, i, k),
             Row{}.add(cat().gross(i, k + 1), 1.0).add(cat().gross(i, k), -1.0),
             RowSense::kGreaterEqual, 0.0);
        if (options_.binary_ratchet) {
          emit(CF::kPlantOnRatchet, row_name(CF::kPlantOnRatchet, i, k),
               Row{}.add(cat().plant_on(i, k + 1), 1.0)
                   .add(cat().plant_on(i, k), -1.0),
               RowSense::kGreaterEqual, 0.0);
        }
      }
    }
    for (int i = 0; i < I_; ++i) {
      for (int k = 0; k < K_; ++k) {
        Row row;
        row.add(cat().unabated(i, k), 1.0);
        for (int n = 0; n < N_; ++n) row.add(cat().ccs_gross(i, k, n), 1.0);
        for (int s = 0; s < S(); ++s) row.add(cat().solid(i, k, s), 1.0);
        for (int g = 0; g < G(); ++g) row.add(cat().gas(i, k, g), 1.0);
        row.add(cat().gross(i, k), -1.0);
        emit(CF::kPlantSplit, row_name(CF::kPlantSplit, i, k), std::move(row),
             RowSense::kEqual, 0.0);
      }
    }
  }

  void add_ccs_rows() {
    using CF = ConstraintFamily;
    for (int i = 0; i < I_; ++i) {
      const double ub = inst_.plants[i].upper_bound;
      for (int k = 0; k < K_; ++k) {
        for (int n = 0; n < N_; ++n) {
          emit(CF::kCcsMax, row_name(CF::kCcsMax, i, k, n),
               Row{}.add(cat().ccs_gross(i, k, n), 1.0)
                   .add(cat().ccs_on(i, k, n), -ub),
               RowSense::kLessEqual, 0.0);
        }
        Row total;
        for (int n = 0; n < N_; ++n) total.add(cat().ccs_gross(i, k, n), 1.0);
        total.add(cat().gross(i, k), -1.0);
        emit(CF::kCcsTotal, row_name(CF::kCcsTotal, i, k), std::move(total),
             RowSense::kLessEqual, 0.0);
        for (int n = 0; n < N_; ++n) {
          const double loss = inst_.ccs_techs[n].parasitic_loss[k];
          emit(CF::kCcsNet, row_name(CF::kCcsNet, i, k, n),
               Row{}.add(cat().ccs_net(i, k, n), 1.0)
                   .add(cat().ccs_gross(i, k, n), -(1.0 - loss)),
               RowSense::kEqual, 0.0);
        }
      }
      for (int k = 0; k + 1 < K_; ++k) {
        if (!plant_ratchet_window(i, k)) continue;
        for (int n = 0; n < N_; ++n) {
          emit(CF::kCcsRatchet, row_name(CF::kCcsRatchet, i, k, n),
               Row{}.add(cat().ccs_gross(i, k + 1, n), 1.0)
                   .add(cat().ccs_gross(i, k, n), -1.0),
               RowSense::kGreaterEqual, 0.0);
        }
      }
    }
  }

  void add_fuel_rows() {
    using CF = ConstraintFamily;
    for (int i = 0; i < I_; ++i) {
      const double ub = inst_.plants[i].upper_bound;
      for (int k = 0; k + 1 < K_; ++k) {
        if (!plant_ratchet_window(i, k)) continue;
        for (int s = 0; s < S(); ++s) {
          emit(CF::kSolidRatchet, row_name(CF::kSolidRatchet, i, k, s),
               Row{}.add(cat().solid(i, k + 1, s), 1.0)
                   .add(cat().solid(i, k, s), -1.0),
               RowSense::kGreaterEqual, 0.0);
        }
        for (int g = 0; g < G(); ++g) {
          emit(CF::kGasRatchet, row_name(CF::kGasRatchet, i, k, g),
               Row{}.add(cat().gas(i, k + 1, g), 1.0)
                   .add(cat().gas(i, k, g), -1.0),
               RowSense::kGreaterEqual, 0.0);
        }
      }
      for (int k = 0; k < K_; ++k) {
        for (int s = 0; s < S(); ++s) {
          emit(CF::kSolidMax, row_name(CF::kSolidMax, i, k, s),
               Row{}.add(cat().solid(i, k, s), 1.0)
                   .add(cat().solid_on(i, k, s), -ub),
               RowSense::kLessEqual, 0.0);
        }
        for (int g = 0; g < G(); ++g) {
          emit(CF::kGasMax, row_name(CF::kGasMax, i, k, g),
               Row{}.add(cat().gas(i, k, g), 1.0)
                   .add(cat().gas_on(i, k, g), -ub),
               RowSense::kLessEqual, 0.0);
        }
      }
    }
  }

  void add_compensatory_rows() {
    using CF = ConstraintFamily;
    auto cap_rows = [&](CF max_family, CF ratchet_family, int count,
                        auto amount, auto on, auto cap) {
      for (int t = 0; t < count; ++t) {
        for (int k = 0; k < K_; ++k) {
          emit(max_family, row_name(max_family, t, k),
               Row{}.add(amount(k, t), 1.0).add(on(k, t), -cap(t, k)),
               RowSense::kLessEqual, 0.0);
        }
      }
      for (int t = 0; t < count; ++t) {
        for (int k = 0; k + 1 < K_; ++k) {
          emit(ratchet_family, row_name(ratchet_family, t, k),
               Row{}.add(amount(k + 1, t), 1.0).add(amount(k, t), -1.0),
               RowSense::kGreaterEqual, 0.0);
        }
      }
    };
    cap_rows(
        CF::kRenewableMax, CF::kRenewableRatchet, R_,
        [&](int k, int r) { return cat().renewable(k, r); },
        [&](int k, int r) { return cat().renewable_on(k, r); },
        [&](int r, int k) { return inst_.renewables[r].availability_cap[k]; });
    cap_rows(
        CF::kEpNetMax, CF::kEpNetRatchet, P(),
        [&](int k, int p) { return cat().ep_net(k, p); },
        [&](int k, int p) { return cat().ep_net_on(k, p); },
        [&](int p, int k) { return eps_[p]->availability_cap[k]; });
    cap_rows(
        CF::kEcNetMax, CF::kEcNetRatchet, Q(),
        [&](int k, int q) { return cat().ec_net(k, q); },
        [&](int k, int q) { return cat().ec_net_on(k, q); },
        [&](int q, int k) { return ecs_[q]->availability_cap[k]; });
  }

  void add_system_rows() {
    using CF = ConstraintFamily;
    const double aff = inst_.aff;
    for (int k = 0; k < K_; ++k) {
      Row balance;
      Row emissions;
      for (int i = 0; i < I_; ++i) {
        const PowerPlant& plant = inst_.plants[i];
        balance.add(cat().unabated(i, k), 1.0);
        emissions.add(cat().unabated(i, k), plant.co2_intensity);
        for (int n = 0; n < N_; ++n) {
          const CcsTech& tech = inst_.ccs_techs[n];
          balance.add(cat().ccs_net(i, k, n), 1.0);
          emissions.add(cat().ccs_net(i, k, n),
                        ccs_intensity(plant.co2_intensity,
                                      tech.removal_ratio[k],
                                      tech.parasitic_loss[k]));
        }
        for (int s = 0; s < S(); ++s) {
          balance.add(cat().solid(i, k, s), 1.0);
          emissions.add(cat().solid(i, k, s), solids_[s]->co2_intensity[k]);
        }
        for (int g = 0; g < G(); ++g) {
          balance.add(cat().gas(i, k, g), 1.0);
          emissions.add(cat().gas(i, k, g), gases_[g]->co2_intensity[k]);
        }
      }
      for (int r = 0; r < R_; ++r) {
        balance.add(cat().renewable(k, r), 1.0);
        emissions.add(cat().renewable(k, r),
                      inst_.renewables[r].co2_intensity[k]);
      }
      for (int p = 0; p < P(); ++p) {
        balance.add(cat().ep_net(k, p), 1.0);
        emissions.add(cat().ep_net(k, p), eps_[p]->co2_intensity[k]);
      }
      for (int q = 0; q < Q(); ++q) {
        balance.add(cat().ec_net(k, q), -1.0);
        emissions.add(cat().ec_net(k, q), ecs_[q]->co2_intensity[k]);
      }
      emissions.add(cat().emissions(k), -1.0);
      emit(CF::kEnergyBalance, row_name(CF::kEnergyBalance, k),
           std::move(balance), RowSense::kEqual,
           inst_.period_params[k].demand);
      emit(CF::kEmissions, row_name(CF::kEmissions, k), std::move(emissions),
           RowSense::kEqual, 0.0);
    }

    for (int k = 0; k < K_; ++k) {
      Row plant_cost;
      for (int i = 0; i < I_; ++i) {
        const PowerPlant& plant = inst_.plants[i];
        plant_cost.add(cat().unabated(i, k),
                       plant.op_cost[k] + aff * plant.capacity_capex[k]);
        plant_cost.add(cat().plant_on(i, k), aff * plant.fixed_capex[k]);
      }
      plant_cost.add(cat().plant_cost(k), -1.0);
      emit(CF::kPlantCost, row_name(CF::kPlantCost, k), std::move(plant_cost),
           RowSense::kEqual, 0.0);

      Row renew_cost;
      for (int r = 0; r < R_; ++r) {
        const RenewableTech& t = inst_.renewables[r];
        renew_cost.add(cat().renewable(k, r),
                       t.op_cost[k] + aff * t.capacity_capex[k]);
        renew_cost.add(cat().renewable_on(k, r), aff * t.fixed_capex[k]);
      }
      renew_cost.add(cat().renewable_cost(k), -1.0);
      emit(CF::kRenewableCost, row_name(CF::kRenewableCost, k),
           std::move(renew_cost), RowSense::kEqual, 0.0);

      Row ep_cost;
      for (int p = 0; p < P(); ++p) {
        ep_cost.add(cat().ep_net(k, p),
                    eps_[p]->op_cost[k] + aff * eps_[p]->capacity_capex[k]);
        ep_cost.add(cat().ep_net_on(k, p), aff * eps_[p]->fixed_capex[k]);
      }
      ep_cost.add(cat().ep_net_cost(k), -1.0);
      emit(CF::kEpNetCost, row_name(CF::kEpNetCost, k), std::move(ep_cost),
           RowSense::kEqual, 0.0);

      Row ec_cost;
      for (int q = 0; q < Q(); ++q) {
        ec_cost.add(cat().ec_net(k, q),
                    ecs_[q]->op_cost[k] + aff * ecs_[q]->capacity_capex[k]);
        ec_cost.add(cat().ec_net_on(k, q), aff * ecs_[q]->fixed_capex[k]);
      }
      ec_cost.add(cat().ec_net_cost(k), -1.0);
      emit(CF::kEcNetCost, row_name(CF::kEcNetCost, k), std::move(ec_cost),
           RowSense::kEqual, 0.0);

      Row total;
      total.add(cat().plant_cost(k), 1.0);
      for (int i = 0; i < I_; ++i) {
        for (int n = 0; n < N_; ++n) {
          const CcsTech& tech = inst_.ccs_techs[n];
          total.add(cat().ccs_net(i, k, n), tech.gen_cost[k]);
          total.add(cat().ccs_on(i, k, n), aff * tech.fixed_cost[k]);
        }
        for (int s = 0; s < S(); ++s) {
          total.add(cat().solid(i, k, s), solids_[s]->cost[k]);
          total.add(cat().solid_on(i, k, s), aff * solids_[s]->fixed_cost[k]);
        }
        for (int g = 0; g < G(); ++g) {
          total.add(cat().gas(i, k, g), gases_[g]->cost[k]);
          total.add(cat().gas_on(i, k, g), aff * gases_[g]->fixed_cost[k]);
        }
      }
      total.add(cat().renewable_cost(k), 1.0);
      total.add(cat().ep_net_cost(k), 1.0);
      total.add(cat().ec_net_cost(k), 1.0);
      total.add(cat().total_cost(k), -1.0);
      emit(CF::kTotalCost, row_name(CF::kTotalCost, k), std::move(total),
           RowSense::kEqual, 0.0);
    }

    for (int k = 0; k < K_; ++k) {
      if (model_.objective == Objective::kMinBudget) {
        emit(CF::kEmissionLimit, row_name(CF::kEmissionLimit, k),
             Row{}.add(cat().emissions(k), 1.0), RowSense::kLessEqual,
             inst_.period_params[k].emission_limit);
      } else {
        emit(CF::kBudget, row_name(CF::kBudget, k),
             Row{}.add(cat().total_cost(k), 1.0), RowSense::kLessEqual,
             inst_.period_params[k].budget);
      }
    }
  }

  void add_objective() {
    for (int k = 0; k < K_; ++k) {
      const int var = model_.objective == Objective::kMinBudget
                          ? cat().total_cost(k)
                          : cat().emissions(k);
      model_.problem.variables[var].objective = 1.0;
    }
  }

  const Instance& inst_;
  BuildOptions options_;
  std::vector<const AltFuel*> solids_;
  std::vector<const AltFuel*> gases_;
  std::vector<const NetTech*> eps_;
  std::vector<const NetTech*> ecs_;
  int K_;
  int I_;
  int N_;
  int R_;
  PlanningModel model_;
};

}  // namespace

PlanningModel build_model(const Instance& instance, Objective objective,
                          const BuildOptions& options) {
  const auto violations = validate_instance(instance);
  if (!violations.empty()) {
    throw std::invalid_argument("instance is invalid: " +
                                violations.front().to_string());
  }
  PlanningModel model = Assembler(instance, objective, options).build();
  model.problem.name = "PLANNING";
  return model;
}

}  // namespace decarb
