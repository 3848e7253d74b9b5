// Acceptance run: prints one PASS/FAIL/SKIP line per criterion. Criteria 3-5
// compare against reference figures that depend on an unspecified cost
// factor; they are reported with the full sweep table but do not set the exit
// status.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "cli.hpp"
#include "decarb/branch_and_bound.hpp"
#include "decarb/mps_writer.hpp"
#include "decarb/report.hpp"
#include "decarb/simplex.hpp"
#include "decarb/workbook.hpp"
#include "lp_oracle.hpp"
#include "random_problems.hpp"

#ifndef DECARB_DATA_DIR
#error "DECARB_DATA_DIR must point at the bundled workbooks"
#endif

using namespace decarb;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kRunSecondsCap = 60.0;
constexpr double kFeasTol = 1e-6;
constexpr double kFinalPeriodTol = 1e-3;       // TE_6 <= 0 + this
constexpr double kCostAnchor = 3673.0;         // TC_1, mil USD/y
constexpr double kCostAnchorRel = 0.05;
constexpr double kTrajectoryRel = 0.10;
constexpr double kTrajectoryAbs = 0.3;         // Mt/y, criterion 4
constexpr double kOracleTol = 1e-6;
constexpr double kBalanceTol = 1e-6;
constexpr double kIntensityTol = 1e-5;
constexpr double kPerturbation = 0.5;
constexpr int kNumLps = 500;
constexpr int kNumMilps = 200;
constexpr int kMaxBinaries = 12;
constexpr int kExpectedBinaries = 486;

const std::vector<double> kSweep = {0.05, 0.1, 0.2, 0.5, 1.0};
const std::set<std::string> kPeriodOnePlants = {"1", "2", "5", "8"};
constexpr double kS2Period5 = 5.9;
constexpr double kS2Period6 = 0.0;
constexpr double kS2Ep2Period4 = 6.6;
const std::vector<double> kS1Trajectory = {35, 42, 29, 29};

fs::path scenario_dir(int s) {
  return fs::path(DECARB_DATA_DIR) / ("scenario" + std::to_string(s));
}

struct Run {
  int scenario = 0;
  Objective objective = Objective::kMinBudget;
  double aff = 1.0;
  Instance inst;
  PlanningModel model;
  MilpSolution sol;
  std::vector<PeriodReport> reports;
  double seconds = 0.0;

  bool optimal() const { return sol.status == MilpStatus::kOptimal; }
  std::string label() const {
    return fmt::format("S{} {} aff={}", scenario, to_string(objective), aff);
  }
};

Run solve(int scenario, Objective objective, double aff) {
  Run r;
  r.scenario = scenario;
  r.objective = objective;
  r.aff = aff;
  r.inst = to_instance(read_workbook(scenario_dir(scenario)));
  r.inst.aff = aff;
  const auto t0 = std::chrono::steady_clock::now();
  r.model = build_model(r.inst, objective);
  r.sol = solve_milp(r.model.problem, MilpLimits{}, accelerated_options());
  r.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.reports = extract_reports(r.inst, r.model, r.sol).periods;
  std::cerr << fmt::format("  solved {}: {} in {:.1f} s, {} nodes\n", r.label(),
                           to_string(r.sol.status), r.seconds, r.sol.nodes);
  return r;
}

std::string plant_set(const Run& r, int period) {
  if (r.reports.empty()) return "-";
  return fmt::format("{{{}}}", fmt::join(r.reports[period - 1].operating_plants(), ","));
}

double te(const Run& r, int period) {
  return r.reports.empty() ? NAN : r.reports[period - 1].total_emissions;
}

double tech_energy(const Run& r, int period, const std::string& id) {
  if (r.reports.empty()) return NAN;
  for (const TechReport& t : r.reports[period - 1].techs) {
    if (t.id == id) return t.energy;
  }
  return NAN;
}

bool near(double value, double target, double tol) {
  return std::isfinite(value) && std::abs(value - target) <= tol;
}

struct Line {
  int criterion;
  std::string verdict;
  std::string detail;
};

std::vector<Line> lines;
bool binding_failed = false;

void report(int criterion, bool pass, const std::string& detail,
            bool binding = true) {
  lines.push_back({criterion, pass ? "PASS" : "FAIL", detail});
  if (!pass && binding) binding_failed = true;
}

void skip(int criterion, const std::string& detail) {
  lines.push_back({criterion, "SKIP", detail});
}

// Criterion 6.
void lp_oracle() {
  std::mt19937 rng(20240601);
  int agree = 0;
  int optimal = 0;
  std::string first_bad;
  for (int t = 0; t < kNumLps; ++t) {
    const MilpProblem p = testgen::random_lp(rng, 8, 8);
    const oracle::Result ref = oracle::solve_lp(p);
    const LpSolution s = solve_lp(p);
    bool ok = false;
    switch (ref.outcome) {
      case oracle::Outcome::kOptimal:
        ++optimal;
        ok = s.status == LpStatus::kOptimal &&
             std::abs(s.objective - ref.objective) <= kOracleTol;
        break;
      case oracle::Outcome::kInfeasible:
        ok = s.status == LpStatus::kInfeasible;
        break;
      case oracle::Outcome::kUnbounded:
        ok = s.status == LpStatus::kUnbounded;
        break;
    }
    if (ok) {
      ++agree;
    } else if (first_bad.empty()) {
      first_bad = fmt::format(", first mismatch at LP {}", t);
    }
  }
  report(6, agree == kNumLps,
         fmt::format("{}/{} random LPs agree with vertex enumeration ({} optimal){}",
                     agree, kNumLps, optimal, first_bad));
}

// Criterion 7.
void milp_oracle() {
  std::mt19937 rng(777);
  int agree = 0;
  int optimal = 0;
  int max_binaries = 0;
  for (int t = 0; t < kNumMilps; ++t) {
    const MilpProblem p = testgen::random_milp(rng, kMaxBinaries, 2, 6);
    int b = 0;
    for (const Variable& v : p.variables) b += v.is_binary();
    max_binaries = std::max(max_binaries, b);
    const oracle::Result ref = oracle::solve_milp(p);
    bool ok = true;
    for (const MilpOptions& opts : {MilpOptions{}, accelerated_options()}) {
      const MilpSolution s = solve_milp(p, MilpLimits{}, opts);
      if (ref.outcome == oracle::Outcome::kOptimal) {
        ok = ok && s.status == MilpStatus::kOptimal &&
             std::abs(s.objective - ref.objective) <= kOracleTol;
      } else {
        ok = ok && s.status == MilpStatus::kInfeasible;
      }
    }
    optimal += ref.outcome == oracle::Outcome::kOptimal;
    agree += ok;
  }
  report(7, agree == kNumMilps,
         fmt::format("{}/{} random MILPs (<= {} binaries, {} optimal) agree with "
                     "2^b enumeration under both search presets",
                     agree, kNumMilps, max_binaries, optimal));
}

// Criterion 8 helper: perturbs every flow entry of `run` in turn.
struct FlowFamily {
  const char* name;
  ConstraintFamily expected;
  std::function<std::vector<double*>(Deployment&)> entries;
};

std::vector<double*> flatten(std::vector<std::vector<double>>& g) {
  std::vector<double*> out;
  for (auto& row : g) {
    for (double& v : row) out.push_back(&v);
  }
  return out;
}

std::vector<double*> flatten(std::vector<std::vector<std::vector<double>>>& c) {
  std::vector<double*> out;
  for (auto& g : c) {
    for (double* p : flatten(g)) out.push_back(p);
  }
  return out;
}

std::string perturbation_check(const Run& run, int& tried, int& caught) {
  const std::vector<FlowFamily> families = {
      {"gross", ConstraintFamily::kDemand,
       [](Deployment& d) { return flatten(d.gross); }},
      {"unabated", ConstraintFamily::kPlantSplit,
       [](Deployment& d) { return flatten(d.unabated); }},
      {"solid", ConstraintFamily::kPlantSplit,
       [](Deployment& d) { return flatten(d.solid); }},
      {"gas", ConstraintFamily::kPlantSplit,
       [](Deployment& d) { return flatten(d.gas); }},
      {"ccs_gross", ConstraintFamily::kCcsNet,
       [](Deployment& d) { return flatten(d.ccs_gross); }},
      {"ccs_net", ConstraintFamily::kCcsNet,
       [](Deployment& d) { return flatten(d.ccs_net); }},
      {"renewable", ConstraintFamily::kEnergyBalance,
       [](Deployment& d) { return flatten(d.renewable); }},
      {"ep_net", ConstraintFamily::kEnergyBalance,
       [](Deployment& d) { return flatten(d.ep_net); }},
      {"ec_net", ConstraintFamily::kEnergyBalance,
       [](Deployment& d) { return flatten(d.ec_net); }},
  };
  const Deployment base = decode(run.inst, run.model, run.sol.values);
  std::string missed;
  for (const FlowFamily& f : families) {
    Deployment probe = base;
    const std::vector<double*> cells = f.entries(probe);
    for (double* cell : cells) {
      const double saved = *cell;
      *cell += kPerturbation;
      const auto vs = audit_feasibility(run.inst, probe, run.objective);
      *cell = saved;
      ++tried;
      const bool hit = std::any_of(vs.begin(), vs.end(), [&](const auto& v) {
        return v.family == f.expected;
      });
      caught += hit;
      if (!hit && missed.empty()) {
        missed = fmt::format("; {} perturbation not reported as {}", f.name,
                             to_string(f.expected));
      }
    }
  }
  return missed;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void copy_workbook(const fs::path& from, const fs::path& to) {
  fs::remove_all(to);
  fs::create_directories(to);
  for (const auto& e : fs::directory_iterator(from)) {
    if (e.is_regular_file()) fs::copy_file(e.path(), to / e.path().filename());
  }
}

}  // namespace

int main() {
  const fs::path work = fs::current_path() / "acceptance_work";
  fs::remove_all(work);
  fs::create_directories(work);

  std::cerr << "solving the cost-factor sweep\n";
  std::map<double, Run> s1_budget, s2_budget, s2_emission, s1_emission;
  for (double aff : kSweep) {
    s1_budget.emplace(aff, solve(1, Objective::kMinBudget, aff));
    s2_budget.emplace(aff, solve(2, Objective::kMinBudget, aff));
    s2_emission.emplace(aff, solve(2, Objective::kMinEmission, aff));
    s1_emission.emplace(aff, solve(1, Objective::kMinEmission, aff));
  }
  double slowest = 0.0;
  for (const auto* runs : {&s1_budget, &s2_budget, &s2_emission, &s1_emission}) {
    for (const auto& [aff, r] : *runs) slowest = std::max(slowest, r.seconds);
  }

  // Calibration: a sweep value reproducing the period-1 plant set, otherwise
  // the one whose TC_1 is closest to the cost anchor.
  std::optional<double> matching_aff;
  double calibrated = kSweep.front();
  double best_cost_err = INFINITY;
  for (const auto& [aff, r] : s2_budget) {
    if (!r.optimal()) continue;
    const auto ops = r.reports[0].operating_plants();
    const std::set<std::string> set(ops.begin(), ops.end());
    const double err = std::abs(r.reports[0].total_cost - kCostAnchor) / kCostAnchor;
    if (set == kPeriodOnePlants && !matching_aff) matching_aff = aff;
    if (!matching_aff && err < best_cost_err) {
      best_cost_err = err;
      calibrated = aff;
    }
  }
  if (matching_aff) calibrated = *matching_aff;

  // 1
  {
    bool pass = true;
    std::string statuses;
    for (const auto& [aff, r] : s1_budget) {
      pass = pass && r.sol.status == MilpStatus::kInfeasible &&
             r.seconds < kRunSecondsCap;
      statuses += fmt::format(" {}:{}", aff, to_string(r.sol.status));
    }
    report(1, pass, "S1 min_budget status by cost factor:" + statuses);
  }

  // 2
  {
    bool pass = true;
    std::string detail;
    for (const auto& [aff, r] : s2_budget) {
      bool ok = r.optimal() && r.seconds < kRunSecondsCap;
      double worst = -INFINITY;
      for (const PeriodReport& p : r.reports) {
        worst = std::max(worst, p.total_emissions - p.emission_limit);
      }
      ok = ok && worst <= kFeasTol && te(r, 6) <= kFinalPeriodTol;
      pass = pass && ok;
      detail += fmt::format(" {}:{} max(TE-L)={:.2e} TE6={:.2e};", aff,
                            to_string(r.sol.status), worst, te(r, 6));
    }
    report(2, pass, "S2 min_budget" + detail);
  }

  // 3
  {
    const Run& r = s2_budget.at(calibrated);
    const double tc1 = r.optimal() ? r.reports[0].total_cost : NAN;
    const bool cost_ok =
        std::abs(tc1 - kCostAnchor) <= kCostAnchorRel * kCostAnchor;
    report(3, matching_aff.has_value() && cost_ok,
           fmt::format("period-1 plant set {{1,2,5,8}} {}; calibrated aff={} "
                       "gives {} and TC_1={:.2f} ({:+.1f}% from {})",
                       matching_aff ? "reproduced" : "not reproduced at any swept aff",
                       calibrated, plant_set(r, 1), tc1,
                       100.0 * (tc1 - kCostAnchor) / kCostAnchor, kCostAnchor),
           false);
  }

  // 4
  {
    const Run& r = s2_emission.at(calibrated);
    const double t5 = te(r, 5);
    const double t6 = te(r, 6);
    const double ep2 = tech_energy(r, 4, "EP_2");
    const bool pass =
        r.optimal() && r.seconds < kRunSecondsCap &&
        near(t5, kS2Period5, std::max(kTrajectoryRel * kS2Period5, kTrajectoryAbs)) &&
        near(t6, kS2Period6, std::max(kTrajectoryRel * kS2Period6, kTrajectoryAbs)) &&
        near(ep2, kS2Ep2Period4, kTrajectoryRel * kS2Ep2Period4);
    report(4, pass,
           fmt::format("S2 min_emission aff={}: {} TE5={:.3f} (target {}), "
                       "TE6={:.3f} (target {}), EP_2 in P4={:.3f} (target {})",
                       calibrated, to_string(r.sol.status), t5, kS2Period5, t6,
                       kS2Period6, ep2, kS2Ep2Period4),
           false);
  }

  // 5
  {
    const Run& r = s1_emission.at(calibrated);
    bool pass = r.optimal() && r.seconds < kRunSecondsCap;
    std::string detail;
    for (int k = 1; k <= 4; ++k) {
      const double target = kS1Trajectory[k - 1];
      const double value = te(r, k);
      const bool violates =
          !r.reports.empty() && value > r.reports[k - 1].emission_limit + kFeasTol;
      pass = pass && near(value, target, kTrajectoryRel * target) && violates;
      detail += fmt::format(" TE{}={:.2f} (target {}, limit {}){}", k, value,
                            target,
                            r.reports.empty() ? NAN : r.reports[k - 1].emission_limit,
                            violates ? "" : " not violated");
    }
    report(5, pass,
           fmt::format("S1 min_emission aff={}: {}{}", calibrated,
                       to_string(r.sol.status), detail),
           false);
  }

  lp_oracle();
  milp_oracle();

  // 8
  {
    int audited = 0;
    int violations = 0;
    std::string first;
    for (const auto* runs : {&s1_budget, &s2_budget, &s2_emission, &s1_emission}) {
      for (const auto& [aff, r] : *runs) {
        if (!r.optimal()) continue;
        ++audited;
        const auto vs = audit_feasibility(
            r.inst, decode(r.inst, r.model, r.sol.values), r.objective);
        violations += static_cast<int>(vs.size());
        if (!vs.empty() && first.empty()) {
          first = fmt::format("; {}: {}", r.label(), vs.front().to_string());
        }
      }
    }
    int tried = 0;
    int caught = 0;
    std::string missed;
    for (const Run* r : {&s2_budget.at(calibrated), &s2_emission.at(calibrated)}) {
      if (!r->optimal()) continue;
      const std::string m = perturbation_check(*r, tried, caught);
      if (missed.empty()) missed = m;
    }
    report(8, violations == 0 && tried > 0 && caught == tried,
           fmt::format("{} optimal solves audited, {} violations{}; {}/{} single-flow "
                       "perturbations reported under the expected family{}",
                       audited, violations, first, caught, tried, missed));
  }

  // 9
  {
    std::vector<std::string> bad;
    const Run& base = s2_budget.at(calibrated);
    const PlanningModel& m = base.model;
    std::set<std::string> row_names;
    for (const Constraint& c : m.problem.constraints) row_names.insert(c.name);
    const Instance& inst = base.inst;
    const int K = inst.num_periods();
    for (int i = 0; i < static_cast<int>(inst.plants.size()); ++i) {
      const PowerPlant& p = inst.plants[i];
      for (int k = 1; k < K; ++k) {
        const bool expected = p.active_in(k) && p.active_in(k + 1);
        const bool present =
            row_names.count(fmt::format("plant_ratchet[{},{}]", i + 1, k)) != 0;
        if (expected != present) {
          bad.push_back(fmt::format("ratchet for plant {} at {}->{}", p.id, k, k + 1));
        }
      }
      for (int k = 1; k <= K; ++k) {
        if (p.active_in(k)) continue;
        for (int var : {m.catalog.gross(i, k - 1), m.catalog.plant_on(i, k - 1),
                        m.catalog.unabated(i, k - 1)}) {
          const Variable& v = m.problem.variables[var];
          if (v.lower != 0.0 || v.upper != 0.0) {
            bad.push_back(fmt::format("{} not fixed to zero", v.name));
          }
        }
      }
    }
    double worst_balance = 0.0;
    for (const auto* runs : {&s1_budget, &s2_budget, &s2_emission, &s1_emission}) {
      for (const auto& [aff, r] : *runs) {
        for (const PeriodReport& p : r.reports) {
          worst_balance = std::max(worst_balance, std::abs(p.net_supply - p.demand));
        }
      }
    }
    if (worst_balance > kBalanceTol) bad.push_back("energy balance closure");
    const double cr = ccs_intensity(1.0, 0.85, 0.15);
    if (std::abs(cr - 0.17647) > kIntensityTol) bad.push_back("retrofit intensity");
    const int binaries = m.count_binaries();
    if (binaries != kExpectedBinaries) bad.push_back("binary count");
    report(9, bad.empty(),
           fmt::format("ratchet windows, zero fixing, max |supply-demand|={:.2e}, "
                       "CR(1,0.85,0.15)={:.6f}, binaries={}{}",
                       worst_balance, cr, binaries,
                       bad.empty() ? "" : "; failed: " + fmt::format("{}", fmt::join(bad, ", "))));
  }

  // 10
  {
    std::vector<std::map<std::string, std::string>> outputs;
    for (int attempt = 0; attempt < 2; ++attempt) {
      const fs::path dir = work / fmt::format("determinism_{}", attempt);
      copy_workbook(scenario_dir(2), dir);
      std::ostringstream out, err;
      cli::run({"decarb", "solve", dir.string(), "--objective", "min_emission",
                "--aff", fmt::format("{}", calibrated)},
               out, err);
      std::map<std::string, std::string> files;
      for (const auto& e : fs::directory_iterator(dir / "results")) {
        if (e.path().extension() == ".csv") {
          files[e.path().filename().string()] = slurp(e.path());
        }
      }
      outputs.push_back(std::move(files));
    }
    report(10, !outputs[0].empty() && outputs[0] == outputs[1],
           fmt::format("{} result CSVs from two S2 min_emission solves are "
                       "byte-identical: {}",
                       outputs[0].size(), outputs[0] == outputs[1] ? "yes" : "no"));
  }

  // 11
  {
#ifdef DECARB_PYTHON
    std::vector<std::string> results;
    bool pass = true;
    bool skipped = false;
    for (const Run* r : {&s1_budget.at(calibrated), &s2_budget.at(calibrated),
                         &s1_emission.at(calibrated), &s2_emission.at(calibrated)}) {
      const fs::path mps = work / fmt::format("s{}_{}.mps", r->scenario,
                                              to_string(r->objective));
      std::ofstream(mps, std::ios::binary) << export_mps(r->model.problem).text;
      const std::string expected =
          r->optimal() ? fmt::format("optimal {:.12g}", r->sol.objective)
                       : std::string(to_string(r->sol.status));
      const std::string cmd = fmt::format("\"{}\" \"{}\" \"{}\" {} > \"{}.log\" 2>&1",
                                          DECARB_PYTHON, DECARB_CROSSCHECK,
                                          mps.string(), expected, mps.string());
      const int rc = std::system(cmd.c_str());
      const int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
      if (code == 77) {
        skipped = true;
        break;
      }
      pass = pass && code == 0;
      std::string log = slurp(mps.string() + ".log");
      while (!log.empty() && log.back() == '\n') log.pop_back();
      results.push_back(fmt::format("{} [{}]", r->label(), log));
    }
    if (skipped) {
      skip(11, "highspy not installed; MPS cross-check not run");
    } else {
      report(11, pass, fmt::format("HiGHS on exported MPS: {}", fmt::join(results, "; ")));
    }
#else
    skip(11, "no Python interpreter configured; MPS cross-check not run");
#endif
  }

  // Sweep table and calibration record.
  std::cout << "cost-factor sweep\n";
  std::cout << fmt::format("{:>5} | {:>11} {:<14} {:>9} | {:>11} {:>8} {:>8} {:>8} | "
                           "{:>11} {:>7} {:>7} {:>7} {:>7} | {:>11}\n",
                           "aff", "S2 budget", "P1 plants", "TC_1", "S2 emission",
                           "TE5", "TE6", "EP_2 P4", "S1 emission", "TE1", "TE2",
                           "TE3", "TE4", "S1 budget");
  nlohmann::ordered_json record;
  record["criterion"] = 3;
  record["period_one_target"] = std::vector<std::string>(kPeriodOnePlants.begin(),
                                                          kPeriodOnePlants.end());
  record["cost_anchor"] = kCostAnchor;
  record["matching_aff"] = matching_aff ? nlohmann::json(*matching_aff) : nlohmann::json();
  record["calibrated_aff"] = calibrated;
  for (double aff : kSweep) {
    const Run& b = s2_budget.at(aff);
    const Run& e = s2_emission.at(aff);
    const Run& s1 = s1_emission.at(aff);
    const double tc1 = b.optimal() ? b.reports[0].total_cost : NAN;
    std::cout << fmt::format(
        "{:>5} | {:>11} {:<14} {:>9.2f} | {:>11} {:>8.3f} {:>8.3f} {:>8.3f} | "
        "{:>11} {:>7.2f} {:>7.2f} {:>7.2f} {:>7.2f} | {:>11}\n",
        aff, to_string(b.sol.status), plant_set(b, 1), tc1, to_string(e.sol.status),
        te(e, 5), te(e, 6), tech_energy(e, 4, "EP_2"), to_string(s1.sol.status),
        te(s1, 1), te(s1, 2), te(s1, 3), te(s1, 4),
        to_string(s1_budget.at(aff).sol.status));
    nlohmann::ordered_json row;
    row["aff"] = aff;
    row["s2_min_budget_status"] = to_string(b.sol.status);
    row["period_one_plants"] = b.optimal() ? b.reports[0].operating_plants()
                                           : std::vector<std::string>{};
    row["tc_1"] = b.optimal() ? nlohmann::json(tc1) : nlohmann::json();
    record["sweep"].push_back(row);
  }
  std::ofstream(fs::current_path() / "acceptance_calibration.json")
      << record.dump(2) << "\n";
  std::cout << fmt::format("slowest single run: {:.1f} s (cap {} s)\n\n", slowest,
                           kRunSecondsCap);

  for (const Line& l : lines) {
    std::cout << fmt::format("criterion {:>2}: {} - {}\n", l.criterion, l.verdict,
                             l.detail);
  }
  std::cout << (binding_failed ? "binding criteria: FAIL\n"
                               : "binding criteria: PASS\n");
  return binding_failed ? 1 : 0;
}
