#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <variant>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "decarb/branch_and_bound.hpp"
#include "decarb/kernels.hpp"
#include "decarb/model_builder.hpp"
#include "decarb/mps_writer.hpp"
#include "decarb/report.hpp"
#include "decarb/workbook.hpp"

namespace decarb::cli {

namespace fs = std::filesystem;

namespace {

struct Loaded {
  Workbook workbook;
  Instance instance;
};

// Reads and checks a workbook; on failure prints the problems and returns the
// exit code instead.
std::variant<Loaded, int> load(const std::string& path, std::ostream& err) {
  Loaded l;
  try {
    l.workbook = read_workbook(path);
    l.instance = to_instance(l.workbook);
  } catch (const WorkbookError& e) {
    for (const auto& issue : e.issues()) fmt::print(err, "error: {}\n", issue);
    return kValidation;
  } catch (const fs::filesystem_error& e) {
    fmt::print(err, "error: {}: {}\n", e.path1().string(), e.what());
    return kUsage;
  }
  const auto violations = validate_instance(l.instance);
  if (!violations.empty()) {
    for (const auto& v : violations) fmt::print(err, "error: {}\n", v.to_string());
    return kValidation;
  }
  return l;
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  auto loaded = load(path, err);
  if (auto* code = std::get_if<int>(&loaded)) return *code;
  const Instance& inst = std::get<Loaded>(loaded).instance;
  fmt::print(out,
             "ok: {} periods, {} plants, {} renewables, {} alternative fuels, "
             "{} CCS technologies, {} NETs\n",
             inst.num_periods(), inst.plants.size(), inst.renewables.size(),
             inst.alt_fuels.size(), inst.ccs_techs.size(), inst.nets.size());
  return kOk;
}

struct SolveArgs {
  std::string path;
  std::optional<std::string> objective;
  std::optional<double> aff;
  long node_cap = MilpLimits{}.node_cap;
  std::optional<double> time_cap;
  std::optional<std::string> mps_export;
};

int exit_code(MilpStatus status) {
  switch (status) {
    case MilpStatus::kOptimal: return kOk;
    case MilpStatus::kInfeasible: return kInfeasible;
    case MilpStatus::kLimitReached:
    case MilpStatus::kNoIncumbent: return kLimits;
    case MilpStatus::kUnbounded: return kValidation;
  }
  return kValidation;
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  auto loaded = load(args.path, err);
  if (auto* code = std::get_if<int>(&loaded)) return *code;
  Loaded& l = std::get<Loaded>(loaded);
  Instance& inst = l.instance;
  const Objective objective =
      args.objective ? parse_objective(*args.objective) : l.workbook.config.objective;
  if (args.aff) inst.aff = *args.aff;

  const PlanningModel model = build_model(inst, objective);
  if (args.mps_export) {
    const MpsExport mps = export_mps(model.problem);
    std::ofstream f(*args.mps_export, std::ios::binary);
    f << mps.text;
    std::ofstream names(*args.mps_export + ".names.csv", std::ios::binary);
    names << mps.name_map_csv();
    if (!f || !names) {
      fmt::print(err, "error: cannot write {}\n", *args.mps_export);
      return kUsage;
    }
    fmt::print(out, "wrote {}\n", *args.mps_export);
  }

  MilpLimits limits;
  limits.node_cap = args.node_cap;
  if (args.time_cap) limits.time_cap_seconds = *args.time_cap;
  const auto t0 = std::chrono::steady_clock::now();
  const MilpSolution sol = solve_milp(model.problem, limits, accelerated_options());
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  RunManifest manifest;
  manifest.input = fs::absolute(args.path).lexically_normal().string();
  manifest.objective = std::string(to_string(objective));
  manifest.aff = inst.aff;
  manifest.node_cap = limits.node_cap;
  manifest.time_cap_seconds = limits.time_cap_seconds;
  manifest.status = std::string(to_string(sol.status));
  if (sol.has_incumbent()) {
    manifest.objective_value = sol.objective;
    manifest.bound = sol.bound;
    manifest.gap = sol.gap();
  }
  manifest.nodes = sol.nodes;
  manifest.lp_iterations = sol.lp_iterations;
  manifest.wall_time_seconds = wall;
  manifest.threads = kernels::max_threads();

  if (sol.has_incumbent()) {
    fmt::print(out, "status: {}  objective: {:.6f}  bound: {:.6f}  gap: {:.3e}  nodes: {}\n",
               to_string(sol.status), sol.objective, sol.bound, sol.gap(),
               sol.nodes);
  } else {
    fmt::print(out, "status: {}  gap: inf  nodes: {}\n", to_string(sol.status),
               sol.nodes);
  }

  const fs::path results = fs::path(args.path) / "results";
  try {
    if (sol.has_incumbent()) {
      const ReportSet reports = extract_reports(inst, model, sol);
      const Summary summary = summarize(reports.periods);
      write_results(results, inst, reports.periods, summary, manifest);
      for (const SummaryRow& r : summary.rows) {
        fmt::print(out, "period {}: emissions {:.3f} (limit {:.3f}, {}), cost {:.2f} (budget {:.2f}, {})\n",
                   r.period, r.total_emissions, r.emission_limit,
                   r.limit_satisfied ? "met" : "violated", r.total_cost,
                   r.budget, r.within_budget ? "within" : "over");
      }
      const auto violations =
          audit_feasibility(inst, decode(inst, model, sol.values), objective);
      if (!violations.empty()) {
        for (const auto& v : violations) fmt::print(err, "audit: {}\n", v.to_string());
        return kValidation;
      }
    } else {
      write_manifest(results, manifest);
    }
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  }
  fmt::print(out, "results: {}\n", results.string());
  return exit_code(sol.status);
}

int cmd_template(const std::string& path, int periods, std::ostream& out,
                 std::ostream& err) {
  try {
    write_template(path, periods);
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  }
  fmt::print(out, "wrote {}-period template to {}\n", periods, path);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Multiperiod decarbonisation planner"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a workbook");
  validate->add_option("path", validate_path, "Workbook directory")->required();

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Build and solve the planning model");
  solve->add_option("path", solve_args.path, "Workbook directory")->required();
  solve->add_option("--objective", solve_args.objective,
                    "min_budget or min_emission (default: RUN_CONFIG)")
      ->check(CLI::IsMember({"min_budget", "min_emission"}));
  solve->add_option("--aff", solve_args.aff, "Annualised cost factor")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--node-cap", solve_args.node_cap, "Branch-and-bound node limit")
      ->check(CLI::PositiveNumber);
  solve->add_option("--time-cap", solve_args.time_cap, "Time limit in seconds")
      ->check(CLI::PositiveNumber);
  solve->add_option("--mps-export", solve_args.mps_export,
                    "Also write the model as fixed-format MPS");

  std::string template_path;
  int periods = 0;
  auto* tmpl = app.add_subcommand("template", "Write an empty workbook");
  tmpl->add_option("path", template_path, "Output directory")->required();
  tmpl->add_option("periods", periods, "Number of periods (1-50)")->required();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*validate) return cmd_validate(validate_path, out, err);
    if (*solve) return cmd_solve(solve_args, out, err);
    if (*tmpl) return cmd_template(template_path, periods, out, err);
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kValidation;
  }
  return kUsage;
}

}  // namespace decarb::cli
