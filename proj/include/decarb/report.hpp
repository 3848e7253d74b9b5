#pragma once

#include <string>
#include <vector>

#include "decarb/branch_and_bound.hpp"
#include "decarb/constraint_family.hpp"
#include "decarb/domain.hpp"
#include "decarb/model_builder.hpp"

namespace decarb {

using Grid = std::vector<std::vector<double>>;             // [k][entity]
using Cube = std::vector<std::vector<std::vector<double>>>;  // [k][i][option]

// Model values in domain terms, indexed 0-based by period first. Solver
// auxiliaries (unabated, ccs_net, emissions, costs) are kept so the auditor
// can compare them against its own recomputation.
struct Deployment {
  Grid gross;
  Grid unabated;
  Grid plant_on;
  Cube ccs_gross;
  Cube ccs_net;
  Cube ccs_on;
  Cube solid;
  Cube solid_on;
  Cube gas;
  Cube gas_on;
  Grid renewable;
  Grid renewable_on;
  Grid ep_net;
  Grid ep_net_on;
  Grid ec_net;
  Grid ec_net_on;
  std::vector<double> emissions;
  std::vector<double> total_cost;
  std::vector<double> plant_cost;
  std::vector<double> renewable_cost;
  std::vector<double> ep_net_cost;
  std::vector<double> ec_net_cost;
};

// All-zero deployment shaped for `instance`.
Deployment empty_deployment(const Instance& instance);

// Reads primal values through the model's catalog.
Deployment decode(const Instance& instance, const PlanningModel& model,
                  const std::vector<double>& values);

struct CostBreakdown {
  double operating = 0.0;
  double fixed = 0.0;     // AFF-scaled fixed capital and retrofit charges
  double capacity = 0.0;  // AFF-scaled capacity-dependent capital

  double total() const { return operating + fixed + capacity; }
};

struct PlantReport {
  std::string id;
  std::string fuel;
  double gross = 0.0;
  std::vector<double> ccs_retrofit;  // per CCS technology
  std::vector<double> solid;         // per alternative solid fuel
  std::vector<double> gas;           // per alternative gas fuel
  double unabated = 0.0;
  double net = 0.0;
  double co2 = 0.0;
  CostBreakdown cost;

  bool operating() const { return gross > 1e-6; }
};

enum class TechKind { kRenewable, kEpNet, kEcNet };

std::string_view to_string(TechKind kind);

struct TechReport {
  std::string id;
  TechKind kind = TechKind::kRenewable;
  double energy = 0.0;  // EC-NETs consume this amount
  double co2 = 0.0;
  CostBreakdown cost;
};

struct PeriodReport {
  int period = 1;  // 1-based
  std::vector<PlantReport> plants;
  std::vector<TechReport> techs;
  double total_emissions = 0.0;
  double total_cost = 0.0;
  double demand = 0.0;
  double emission_limit = 0.0;
  double budget = 0.0;
  CostBreakdown cost;
  // Net supply minus EC-NET consumption; equals demand for a feasible plan.
  double net_supply = 0.0;

  bool limit_satisfied(double tol = 1e-6) const {
    return total_emissions <= emission_limit + tol;
  }
  bool within_budget(double tol = 1e-6) const {
    return total_cost <= budget + tol;
  }
  std::vector<std::string> operating_plants() const;
};

struct ReportSet {
  MilpStatus status = MilpStatus::kInfeasible;
  std::vector<PeriodReport> periods;  // empty unless an incumbent exists

  bool has_reports() const { return !periods.empty(); }
};

// Recomputes every energy, load and cost entry from primary flows (gross
// output, retrofit and substituted energy, compensatory deployment).
std::vector<PeriodReport> extract_reports(const Instance& instance,
                                          const Deployment& deployment);

// Reports for a solver result; periods stay empty without an incumbent.
ReportSet extract_reports(const Instance& instance, const PlanningModel& model,
                          const MilpSolution& solution);

struct EquationViolation {
  ConstraintFamily family;
  std::string where;  // 1-based indices, e.g. "plant 3, period 2"
  double residual = 0.0;

  std::string to_string() const;
};

// Re-checks every constraint family from raw instance data. Shares no code
// with the model builder. Residuals above `tol` are reported.
std::vector<EquationViolation> audit_feasibility(const Instance& instance,
                                                 const Deployment& deployment,
                                                 Objective objective,
                                                 double tol = 1e-6);

struct SummaryRow {
  int period = 1;
  double total_emissions = 0.0;
  double emission_limit = 0.0;
  bool limit_satisfied = false;
  double total_cost = 0.0;
  double budget = 0.0;
  bool within_budget = false;
  double cumulative_emissions = 0.0;
  double demand = 0.0;
};

struct Summary {
  std::vector<SummaryRow> rows;

  double total_cost() const;
  double total_emissions() const;
};

Summary summarize(const std::vector<PeriodReport>& reports);

}  // namespace decarb
