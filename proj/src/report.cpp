#include "decarb/report.hpp"

#include <cmath>

#include <fmt/format.h>

namespace decarb {

namespace {

Grid grid(int K, int n) { return Grid(K, std::vector<double>(n, 0.0)); }
Cube cube(int K, int n, int m) {
  return Cube(K, Grid(n, std::vector<double>(m, 0.0)));
}

struct Dims {
  int K, I, N, S, G, R, P, Q;
  explicit Dims(const Instance& inst)
      : K(inst.num_periods()),
        I(static_cast<int>(inst.plants.size())),
        N(static_cast<int>(inst.ccs_techs.size())),
        S(static_cast<int>(inst.solid_fuels().size())),
        G(static_cast<int>(inst.gas_fuels().size())),
        R(static_cast<int>(inst.renewables.size())),
        P(static_cast<int>(inst.ep_nets().size())),
        Q(static_cast<int>(inst.ec_nets().size())) {}
};

}  // namespace

std::string_view to_string(TechKind kind) {
  switch (kind) {
    case TechKind::kRenewable: return "renewable";
    case TechKind::kEpNet: return "ep_net";
    case TechKind::kEcNet: return "ec_net";
  }
  return "?";
}

Deployment empty_deployment(const Instance& instance) {
  const Dims d(instance);
  Deployment dep;
  dep.gross = dep.unabated = dep.plant_on = grid(d.K, d.I);
  dep.ccs_gross = dep.ccs_net = dep.ccs_on = cube(d.K, d.I, d.N);
  dep.solid = dep.solid_on = cube(d.K, d.I, d.S);
  dep.gas = dep.gas_on = cube(d.K, d.I, d.G);
  dep.renewable = dep.renewable_on = grid(d.K, d.R);
  dep.ep_net = dep.ep_net_on = grid(d.K, d.P);
  dep.ec_net = dep.ec_net_on = grid(d.K, d.Q);
  dep.emissions = dep.total_cost = dep.plant_cost = dep.renewable_cost =
      dep.ep_net_cost = dep.ec_net_cost = std::vector<double>(d.K, 0.0);
  return dep;
}

Deployment decode(const Instance& instance, const PlanningModel& model,
                  const std::vector<double>& x) {
  const Dims d(instance);
  const VariableCatalog& c = model.catalog;
  Deployment dep = empty_deployment(instance);
  for (int k = 0; k < d.K; ++k) {
    for (int i = 0; i < d.I; ++i) {
      dep.gross[k][i] = x[c.gross(i, k)];
      dep.unabated[k][i] = x[c.unabated(i, k)];
      dep.plant_on[k][i] = x[c.plant_on(i, k)];
      for (int n = 0; n < d.N; ++n) {
        dep.ccs_gross[k][i][n] = x[c.ccs_gross(i, k, n)];
        dep.ccs_net[k][i][n] = x[c.ccs_net(i, k, n)];
        dep.ccs_on[k][i][n] = x[c.ccs_on(i, k, n)];
      }
      for (int s = 0; s < d.S; ++s) {
        dep.solid[k][i][s] = x[c.solid(i, k, s)];
        dep.solid_on[k][i][s] = x[c.solid_on(i, k, s)];
      }
      for (int g = 0; g < d.G; ++g) {
        dep.gas[k][i][g] = x[c.gas(i, k, g)];
        dep.gas_on[k][i][g] = x[c.gas_on(i, k, g)];
      }
    }
    for (int r = 0; r < d.R; ++r) {
      dep.renewable[k][r] = x[c.renewable(k, r)];
      dep.renewable_on[k][r] = x[c.renewable_on(k, r)];
    }
    for (int p = 0; p < d.P; ++p) {
      dep.ep_net[k][p] = x[c.ep_net(k, p)];
      dep.ep_net_on[k][p] = x[c.ep_net_on(k, p)];
    }
    for (int q = 0; q < d.Q; ++q) {
      dep.ec_net[k][q] = x[c.ec_net(k, q)];
      dep.ec_net_on[k][q] = x[c.ec_net_on(k, q)];
    }
    dep.emissions[k] = x[c.emissions(k)];
    dep.total_cost[k] = x[c.total_cost(k)];
    dep.plant_cost[k] = x[c.plant_cost(k)];
    dep.renewable_cost[k] = x[c.renewable_cost(k)];
    dep.ep_net_cost[k] = x[c.ep_net_cost(k)];
    dep.ec_net_cost[k] = x[c.ec_net_cost(k)];
  }
  return dep;
}

std::vector<std::string> PeriodReport::operating_plants() const {
  std::vector<std::string> out;
  for (const PlantReport& p : plants) {
    if (p.operating()) out.push_back(p.id);
  }
  return out;
}

std::vector<PeriodReport> extract_reports(const Instance& inst,
                                          const Deployment& dep) {
  const Dims d(inst);
  const auto solids = inst.solid_fuels();
  const auto gases = inst.gas_fuels();
  const auto eps = inst.ep_nets();
  const auto ecs = inst.ec_nets();
  const double aff = inst.aff;
  std::vector<PeriodReport> out;
  for (int k = 0; k < d.K; ++k) {
    PeriodReport rep;
    rep.period = k + 1;
    rep.demand = inst.period_params[k].demand;
    rep.emission_limit = inst.period_params[k].emission_limit;
    rep.budget = inst.period_params[k].budget;
    for (int i = 0; i < d.I; ++i) {
      const PowerPlant& plant = inst.plants[i];
      PlantReport row;
      row.id = plant.id;
      row.fuel = plant.fuel_label;
      row.gross = dep.gross[k][i];
      double diverted = 0.0;
      double net = 0.0;
      for (int n = 0; n < d.N; ++n) {
        const CcsTech& t = inst.ccs_techs[n];
        const double fr = dep.ccs_gross[k][i][n];
        const double fnr = fr * (1.0 - t.parasitic_loss[k]);
        row.ccs_retrofit.push_back(fr);
        diverted += fr;
        net += fnr;
        row.co2 += fnr * plant.co2_intensity * (1.0 - t.removal_ratio[k]) /
                   (1.0 - t.parasitic_loss[k]);
        row.cost.operating += fnr * t.gen_cost[k];
        row.cost.fixed += aff * t.fixed_cost[k] * dep.ccs_on[k][i][n];
      }
      for (int s = 0; s < d.S; ++s) {
        const double fas = dep.solid[k][i][s];
        row.solid.push_back(fas);
        diverted += fas;
        net += fas;
        row.co2 += fas * solids[s]->co2_intensity[k];
        row.cost.operating += fas * solids[s]->cost[k];
        row.cost.fixed += aff * solids[s]->fixed_cost[k] * dep.solid_on[k][i][s];
      }
      for (int g = 0; g < d.G; ++g) {
        const double fag = dep.gas[k][i][g];
        row.gas.push_back(fag);
        diverted += fag;
        net += fag;
        row.co2 += fag * gases[g]->co2_intensity[k];
        row.cost.operating += fag * gases[g]->cost[k];
        row.cost.fixed += aff * gases[g]->fixed_cost[k] * dep.gas_on[k][i][g];
      }
      row.unabated = row.gross - diverted;
      row.net = row.unabated + net;
      row.co2 += row.unabated * plant.co2_intensity;
      row.cost.operating += row.unabated * plant.op_cost[k];
      row.cost.capacity += aff * row.unabated * plant.capacity_capex[k];
      row.cost.fixed += aff * plant.fixed_capex[k] * dep.plant_on[k][i];
      rep.net_supply += row.net;
      rep.total_emissions += row.co2;
      rep.cost.operating += row.cost.operating;
      rep.cost.fixed += row.cost.fixed;
      rep.cost.capacity += row.cost.capacity;
      rep.plants.push_back(std::move(row));
    }
    auto add_tech = [&](const std::string& id, TechKind kind, double amount,
                        double on, double ci, double op, double fixed,
                        double capacity) {
      TechReport t;
      t.id = id;
      t.kind = kind;
      t.energy = amount;
      t.co2 = amount * ci;
      t.cost.operating = amount * op;
      t.cost.fixed = aff * fixed * on;
      t.cost.capacity = aff * capacity * amount;
      rep.net_supply += kind == TechKind::kEcNet ? -amount : amount;
      rep.total_emissions += t.co2;
      rep.cost.operating += t.cost.operating;
      rep.cost.fixed += t.cost.fixed;
      rep.cost.capacity += t.cost.capacity;
      rep.techs.push_back(std::move(t));
    };
    for (int r = 0; r < d.R; ++r) {
      const RenewableTech& t = inst.renewables[r];
      add_tech(t.id, TechKind::kRenewable, dep.renewable[k][r],
               dep.renewable_on[k][r], t.co2_intensity[k], t.op_cost[k],
               t.fixed_capex[k], t.capacity_capex[k]);
    }
    for (int p = 0; p < d.P; ++p) {
      const NetTech& t = *eps[p];
      add_tech(t.id, TechKind::kEpNet, dep.ep_net[k][p], dep.ep_net_on[k][p],
               t.co2_intensity[k], t.op_cost[k], t.fixed_capex[k],
               t.capacity_capex[k]);
    }
    for (int q = 0; q < d.Q; ++q) {
      const NetTech& t = *ecs[q];
      add_tech(t.id, TechKind::kEcNet, dep.ec_net[k][q], dep.ec_net_on[k][q],
               t.co2_intensity[k], t.op_cost[k], t.fixed_capex[k],
               t.capacity_capex[k]);
    }
    rep.total_cost = rep.cost.total();
    out.push_back(std::move(rep));
  }
  return out;
}

ReportSet extract_reports(const Instance& instance, const PlanningModel& model,
                          const MilpSolution& solution) {
  ReportSet set;
  set.status = solution.status;
  if (solution.has_incumbent()) {
    set.periods =
        extract_reports(instance, decode(instance, model, solution.values));
  }
  return set;
}

std::string EquationViolation::to_string() const {
  return fmt::format("{} at {}: residual {:.6g}", decarb::to_string(family),
                     where, residual);
}

namespace {

// Independent constraint evaluation straight from instance data.
class Auditor {
 public:
  Auditor(const Instance& inst, const Deployment& dep, Objective objective,
          double tol)
      : inst_(inst),
        dep_(dep),
        objective_(objective),
        tol_(tol),
        d_(inst),
        solids_(inst.solid_fuels()),
        gases_(inst.gas_fuels()),
        eps_(inst.ep_nets()),
        ecs_(inst.ec_nets()) {}

  std::vector<EquationViolation> run() {
    check_shapes();
    if (!out_.empty()) return out_;
    plants();
    retrofits();
    compensatory();
    system();
    costs();
    limits();
    integrality_and_signs();
    return out_;
  }

 private:
  using CF = ConstraintFamily;

  void report(CF family, double residual, std::string where) {
    if (residual > tol_) out_.push_back({family, std::move(where), residual});
  }
  void at_most(CF family, double lhs, double rhs, const std::string& where) {
    report(family, lhs - rhs, where);
  }
  void equal(CF family, double lhs, double rhs, const std::string& where) {
    report(family, std::abs(lhs - rhs), where);
  }

  static std::string pk(int i, int k) {
    return fmt::format("plant {}, period {}", i + 1, k + 1);
  }
  static std::string pko(int i, int k, const char* what, int o) {
    return fmt::format("plant {}, period {}, {} {}", i + 1, k + 1, what, o + 1);
  }
  static std::string tk(const char* what, int t, int k) {
    return fmt::format("{} {}, period {}", what, t + 1, k + 1);
  }

  void check_shapes() {
    const Deployment ref = empty_deployment(inst_);
    auto same = [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return false;
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].size() != b[k].size()) return false;
      }
      return true;
    };
    const bool ok = same(dep_.gross, ref.gross) &&
                    same(dep_.unabated, ref.unabated) &&
                    same(dep_.plant_on, ref.plant_on) &&
                    same(dep_.ccs_gross, ref.ccs_gross) &&
                    same(dep_.ccs_net, ref.ccs_net) &&
                    same(dep_.ccs_on, ref.ccs_on) &&
                    same(dep_.solid, ref.solid) && same(dep_.gas, ref.gas) &&
                    same(dep_.solid_on, ref.solid_on) &&
                    same(dep_.gas_on, ref.gas_on) &&
                    same(dep_.renewable, ref.renewable) &&
                    same(dep_.ep_net, ref.ep_net) &&
                    same(dep_.ec_net, ref.ec_net) &&
                    same(dep_.renewable_on, ref.renewable_on) &&
                    same(dep_.ep_net_on, ref.ep_net_on) &&
                    same(dep_.ec_net_on, ref.ec_net_on) &&
                    dep_.emissions.size() == ref.emissions.size() &&
                    dep_.total_cost.size() == ref.total_cost.size() &&
                    dep_.plant_cost.size() == ref.plant_cost.size() &&
                    dep_.renewable_cost.size() == ref.renewable_cost.size() &&
                    dep_.ep_net_cost.size() == ref.ep_net_cost.size() &&
                    dep_.ec_net_cost.size() == ref.ec_net_cost.size();
    if (!ok) {
      out_.push_back({CF::kBounds, "deployment shape", kInfinity});
    } else {
      // Per-plant option vectors must match too.
      for (int k = 0; k < d_.K; ++k) {
        for (int i = 0; i < d_.I; ++i) {
          if (dep_.ccs_gross[k][i].size() != static_cast<std::size_t>(d_.N) ||
              dep_.solid[k][i].size() != static_cast<std::size_t>(d_.S) ||
              dep_.gas[k][i].size() != static_cast<std::size_t>(d_.G)) {
            out_.push_back({CF::kBounds, "deployment shape", kInfinity});
            return;
          }
        }
      }
    }
  }

  bool active(int i, int k) const {
    const PowerPlant& p = inst_.plants[i];
    return k + 1 >= p.commission_period && k + 1 < p.decommission_period;
  }
  bool is_fossil(int i) const {
    return inst_.plants[i].category == PlantCategory::kFossil;
  }
  bool burns(int i, FuelKind fuel) const { return inst_.plants[i].fuel == fuel; }
  bool offered(const std::string& id, int k) const {
    return inst_.availability.available(id, k + 1);
  }

  void plants() {
    for (int k = 0; k < d_.K; ++k) {
      double supply = 0.0;
      for (int i = 0; i < d_.I; ++i) supply += dep_.gross[k][i];
      equal(CF::kDemand, supply, inst_.period_params[k].demand,
            fmt::format("period {}", k + 1));
    }
    for (int i = 0; i < d_.I; ++i) {
      const PowerPlant& p = inst_.plants[i];
      for (int k = 0; k < d_.K; ++k) {
        const double fs = dep_.gross[k][i];
        const double on = dep_.plant_on[k][i];
        at_most(CF::kPlantMinOutput, p.lower_bound * on, fs, pk(i, k));
        at_most(CF::kPlantMaxOutput, fs, p.upper_bound * on, pk(i, k));
        if (!active(i, k)) {
          double stray = std::abs(fs) + std::abs(on);
          for (int n = 0; n < d_.N; ++n) {
            stray += std::abs(dep_.ccs_gross[k][i][n]) +
                     std::abs(dep_.ccs_on[k][i][n]);
          }
          for (int s = 0; s < d_.S; ++s) {
            stray += std::abs(dep_.solid[k][i][s]) +
                     std::abs(dep_.solid_on[k][i][s]);
          }
          for (int g = 0; g < d_.G; ++g) {
            stray += std::abs(dep_.gas[k][i][g]) + std::abs(dep_.gas_on[k][i][g]);
          }
          report(CF::kPlantWindow, stray, pk(i, k));
        }
        double split = dep_.unabated[k][i];
        for (int n = 0; n < d_.N; ++n) split += dep_.ccs_gross[k][i][n];
        for (int s = 0; s < d_.S; ++s) split += dep_.solid[k][i][s];
        for (int g = 0; g < d_.G; ++g) split += dep_.gas[k][i][g];
        equal(CF::kPlantSplit, split, fs, pk(i, k));
      }
      for (int k = 0; k + 1 < d_.K; ++k) {
        if (!active(i, k) || !active(i, k + 1)) continue;
        at_most(CF::kPlantRatchet, dep_.gross[k][i], dep_.gross[k + 1][i],
                pk(i, k));
        for (int n = 0; n < d_.N; ++n) {
          at_most(CF::kCcsRatchet, dep_.ccs_gross[k][i][n],
                  dep_.ccs_gross[k + 1][i][n], pko(i, k, "ccs", n));
        }
        for (int s = 0; s < d_.S; ++s) {
          at_most(CF::kSolidRatchet, dep_.solid[k][i][s],
                  dep_.solid[k + 1][i][s], pko(i, k, "solid fuel", s));
        }
        for (int g = 0; g < d_.G; ++g) {
          at_most(CF::kGasRatchet, dep_.gas[k][i][g], dep_.gas[k + 1][i][g],
                  pko(i, k, "gas fuel", g));
        }
      }
    }
  }

  void retrofits() {
    for (int i = 0; i < d_.I; ++i) {
      const double ub = inst_.plants[i].upper_bound;
      for (int k = 0; k < d_.K; ++k) {
        double routed = 0.0;
        for (int n = 0; n < d_.N; ++n) {
          const CcsTech& t = inst_.ccs_techs[n];
          const double fr = dep_.ccs_gross[k][i][n];
          routed += fr;
          at_most(CF::kCcsMax, fr, ub * dep_.ccs_on[k][i][n],
                  pko(i, k, "ccs", n));
          equal(CF::kCcsNet, dep_.ccs_net[k][i][n],
                fr * (1.0 - t.parasitic_loss[k]), pko(i, k, "ccs", n));
          const double used = std::abs(fr) + std::abs(dep_.ccs_on[k][i][n]);
          if (!is_fossil(i)) {
            report(CF::kAttachment, used, pko(i, k, "ccs", n));
          }
          if (!offered(t.id, k)) {
            report(CF::kAvailability, used, pko(i, k, "ccs", n));
          }
        }
        at_most(CF::kCcsTotal, routed, dep_.gross[k][i], pk(i, k));
        for (int s = 0; s < d_.S; ++s) {
          const double fas = dep_.solid[k][i][s];
          at_most(CF::kSolidMax, fas, ub * dep_.solid_on[k][i][s],
                  pko(i, k, "solid fuel", s));
          const double used = std::abs(fas) + std::abs(dep_.solid_on[k][i][s]);
          if (!burns(i, FuelKind::kCoal)) {
            report(CF::kAttachment, used, pko(i, k, "solid fuel", s));
          }
          if (!offered(solids_[s]->id, k)) {
            report(CF::kAvailability, used, pko(i, k, "solid fuel", s));
          }
        }
        for (int g = 0; g < d_.G; ++g) {
          const double fag = dep_.gas[k][i][g];
          at_most(CF::kGasMax, fag, ub * dep_.gas_on[k][i][g],
                  pko(i, k, "gas fuel", g));
          const double used = std::abs(fag) + std::abs(dep_.gas_on[k][i][g]);
          if (!burns(i, FuelKind::kNaturalGas)) {
            report(CF::kAttachment, used, pko(i, k, "gas fuel", g));
          }
          if (!offered(gases_[g]->id, k)) {
            report(CF::kAvailability, used, pko(i, k, "gas fuel", g));
          }
        }
      }
    }
  }

  void compensatory() {
    auto family = [&](const char* what, CF max_family, CF ratchet_family,
                      const Grid& amount, const Grid& on, auto tech_of) {
      const int count = amount.empty() ? 0 : static_cast<int>(amount[0].size());
      for (int t = 0; t < count; ++t) {
        const auto& tech = tech_of(t);
        for (int k = 0; k < d_.K; ++k) {
          at_most(max_family, amount[k][t],
                  tech.availability_cap[k] * on[k][t], tk(what, t, k));
          if (!offered(tech.id, k)) {
            report(CF::kAvailability, std::abs(amount[k][t]) + std::abs(on[k][t]),
                   tk(what, t, k));
          }
        }
        for (int k = 0; k + 1 < d_.K; ++k) {
          at_most(ratchet_family, amount[k][t], amount[k + 1][t],
                  tk(what, t, k));
        }
      }
    };
    family("renewable", CF::kRenewableMax, CF::kRenewableRatchet,
           dep_.renewable, dep_.renewable_on,
           [&](int r) -> const RenewableTech& { return inst_.renewables[r]; });
    family("EP-NET", CF::kEpNetMax, CF::kEpNetRatchet, dep_.ep_net,
           dep_.ep_net_on, [&](int p) -> const NetTech& { return *eps_[p]; });
    family("EC-NET", CF::kEcNetMax, CF::kEcNetRatchet, dep_.ec_net,
           dep_.ec_net_on, [&](int q) -> const NetTech& { return *ecs_[q]; });
  }

  void system() {
    for (int k = 0; k < d_.K; ++k) {
      double supply = 0.0;
      double load = 0.0;
      for (int i = 0; i < d_.I; ++i) {
        const double cs = inst_.plants[i].co2_intensity;
        supply += dep_.unabated[k][i];
        load += dep_.unabated[k][i] * cs;
        for (int n = 0; n < d_.N; ++n) {
          const CcsTech& t = inst_.ccs_techs[n];
          const double cr = cs * (1.0 - t.removal_ratio[k]) /
                            (1.0 - t.parasitic_loss[k]);
          supply += dep_.ccs_net[k][i][n];
          load += dep_.ccs_net[k][i][n] * cr;
        }
        for (int s = 0; s < d_.S; ++s) {
          supply += dep_.solid[k][i][s];
          load += dep_.solid[k][i][s] * solids_[s]->co2_intensity[k];
        }
        for (int g = 0; g < d_.G; ++g) {
          supply += dep_.gas[k][i][g];
          load += dep_.gas[k][i][g] * gases_[g]->co2_intensity[k];
        }
      }
      for (int r = 0; r < d_.R; ++r) {
        supply += dep_.renewable[k][r];
        load += dep_.renewable[k][r] * inst_.renewables[r].co2_intensity[k];
      }
      for (int p = 0; p < d_.P; ++p) {
        supply += dep_.ep_net[k][p];
        load += dep_.ep_net[k][p] * eps_[p]->co2_intensity[k];
      }
      double consumed = 0.0;
      for (int q = 0; q < d_.Q; ++q) {
        consumed += dep_.ec_net[k][q];
        load += dep_.ec_net[k][q] * ecs_[q]->co2_intensity[k];
      }
      const std::string where = fmt::format("period {}", k + 1);
      equal(CF::kEnergyBalance, supply,
            consumed + inst_.period_params[k].demand, where);
      equal(CF::kEmissions, dep_.emissions[k], load, where);
    }
  }

  void costs() {
    const double aff = inst_.aff;
    for (int k = 0; k < d_.K; ++k) {
      const std::string where = fmt::format("period {}", k + 1);
      double ctf = 0.0;
      double extras = 0.0;
      for (int i = 0; i < d_.I; ++i) {
        const PowerPlant& p = inst_.plants[i];
        const double fns = dep_.unabated[k][i];
        ctf += fns * p.op_cost[k] + aff * dep_.plant_on[k][i] * p.fixed_capex[k] +
               aff * fns * p.capacity_capex[k];
        for (int n = 0; n < d_.N; ++n) {
          const CcsTech& t = inst_.ccs_techs[n];
          extras += dep_.ccs_net[k][i][n] * t.gen_cost[k] +
                    aff * t.fixed_cost[k] * dep_.ccs_on[k][i][n];
        }
        for (int s = 0; s < d_.S; ++s) {
          extras += dep_.solid[k][i][s] * solids_[s]->cost[k] +
                    aff * solids_[s]->fixed_cost[k] * dep_.solid_on[k][i][s];
        }
        for (int g = 0; g < d_.G; ++g) {
          extras += dep_.gas[k][i][g] * gases_[g]->cost[k] +
                    aff * gases_[g]->fixed_cost[k] * dep_.gas_on[k][i][g];
        }
      }
      equal(CF::kPlantCost, dep_.plant_cost[k], ctf, where);

      auto tech_cost = [&](const Grid& amount, const Grid& on, auto tech_of) {
        double sum = 0.0;
        const int count =
            amount.empty() ? 0 : static_cast<int>(amount[k].size());
        for (int t = 0; t < count; ++t) {
          const auto& tech = tech_of(t);
          sum += amount[k][t] * tech.op_cost[k] +
                 aff * on[k][t] * tech.fixed_capex[k] +
                 aff * amount[k][t] * tech.capacity_capex[k];
        }
        return sum;
      };
      const double ctc = tech_cost(
          dep_.renewable, dep_.renewable_on,
          [&](int r) -> const RenewableTech& { return inst_.renewables[r]; });
      const double ctep = tech_cost(dep_.ep_net, dep_.ep_net_on,
                                    [&](int p) -> const NetTech& { return *eps_[p]; });
      const double ctec = tech_cost(dep_.ec_net, dep_.ec_net_on,
                                    [&](int q) -> const NetTech& { return *ecs_[q]; });
      equal(CF::kRenewableCost, dep_.renewable_cost[k], ctc, where);
      equal(CF::kEpNetCost, dep_.ep_net_cost[k], ctep, where);
      equal(CF::kEcNetCost, dep_.ec_net_cost[k], ctec, where);
      equal(CF::kTotalCost, dep_.total_cost[k],
            dep_.plant_cost[k] + extras + dep_.renewable_cost[k] +
                dep_.ep_net_cost[k] + dep_.ec_net_cost[k],
            where);
    }
  }

  void limits() {
    for (int k = 0; k < d_.K; ++k) {
      const std::string where = fmt::format("period {}", k + 1);
      if (objective_ == Objective::kMinBudget) {
        at_most(CF::kEmissionLimit, dep_.emissions[k],
                inst_.period_params[k].emission_limit, where);
      } else {
        at_most(CF::kBudget, dep_.total_cost[k], inst_.period_params[k].budget,
                where);
      }
    }
  }

  void integrality_and_signs() {
    auto binary = [&](double v, const std::string& where) {
      report(CF::kIntegrality, std::min(std::abs(v), std::abs(v - 1.0)), where);
    };
    auto nonneg = [&](double v, const std::string& where) {
      report(CF::kBounds, -v, where);
    };
    for (int k = 0; k < d_.K; ++k) {
      for (int i = 0; i < d_.I; ++i) {
        binary(dep_.plant_on[k][i], pk(i, k));
        nonneg(dep_.gross[k][i], pk(i, k));
        nonneg(dep_.unabated[k][i], pk(i, k));
        for (int n = 0; n < d_.N; ++n) {
          binary(dep_.ccs_on[k][i][n], pko(i, k, "ccs", n));
          nonneg(dep_.ccs_gross[k][i][n], pko(i, k, "ccs", n));
          nonneg(dep_.ccs_net[k][i][n], pko(i, k, "ccs", n));
        }
        for (int s = 0; s < d_.S; ++s) {
          binary(dep_.solid_on[k][i][s], pko(i, k, "solid fuel", s));
          nonneg(dep_.solid[k][i][s], pko(i, k, "solid fuel", s));
        }
        for (int g = 0; g < d_.G; ++g) {
          binary(dep_.gas_on[k][i][g], pko(i, k, "gas fuel", g));
          nonneg(dep_.gas[k][i][g], pko(i, k, "gas fuel", g));
        }
      }
      for (int r = 0; r < d_.R; ++r) {
        binary(dep_.renewable_on[k][r], tk("renewable", r, k));
        nonneg(dep_.renewable[k][r], tk("renewable", r, k));
      }
      for (int p = 0; p < d_.P; ++p) {
        binary(dep_.ep_net_on[k][p], tk("EP-NET", p, k));
        nonneg(dep_.ep_net[k][p], tk("EP-NET", p, k));
      }
      for (int q = 0; q < d_.Q; ++q) {
        binary(dep_.ec_net_on[k][q], tk("EC-NET", q, k));
        nonneg(dep_.ec_net[k][q], tk("EC-NET", q, k));
      }
      const std::string where = fmt::format("period {}", k + 1);
      for (double v : {dep_.total_cost[k], dep_.plant_cost[k],
                       dep_.renewable_cost[k], dep_.ep_net_cost[k],
                       dep_.ec_net_cost[k]}) {
        nonneg(v, where);
      }
    }
  }

  const Instance& inst_;
  const Deployment& dep_;
  Objective objective_;
  double tol_;
  Dims d_;
  std::vector<const AltFuel*> solids_;
  std::vector<const AltFuel*> gases_;
  std::vector<const NetTech*> eps_;
  std::vector<const NetTech*> ecs_;
  std::vector<EquationViolation> out_;
};

}  // namespace

std::vector<EquationViolation> audit_feasibility(const Instance& instance,
                                                 const Deployment& deployment,
                                                 Objective objective,
                                                 double tol) {
  return Auditor(instance, deployment, objective, tol).run();
}

double Summary::total_cost() const {
  double s = 0.0;
  for (const SummaryRow& r : rows) s += r.total_cost;
  return s;
}

double Summary::total_emissions() const {
  double s = 0.0;
  for (const SummaryRow& r : rows) s += r.total_emissions;
  return s;
}

Summary summarize(const std::vector<PeriodReport>& reports) {
  Summary out;
  double cumulative = 0.0;
  for (const PeriodReport& rep : reports) {
    cumulative += rep.total_emissions;
    SummaryRow row;
    row.period = rep.period;
    row.total_emissions = rep.total_emissions;
    row.emission_limit = rep.emission_limit;
    row.limit_satisfied = rep.limit_satisfied();
    row.total_cost = rep.total_cost;
    row.budget = rep.budget;
    row.within_budget = rep.within_budget();
    row.cumulative_emissions = cumulative;
    row.demand = rep.demand;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace decarb
