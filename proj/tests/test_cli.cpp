#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"

using namespace decarb;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "decarb");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

void copy_scenario(int scenario, const fs::path& to) {
  for (const auto& e : fs::directory_iterator(fixtures::scenario_dir(scenario))) {
    if (e.is_regular_file()) fs::copy_file(e.path(), to / e.path().filename());
  }
}

}  // namespace

TEST_CASE("validate accepts the bundled workbooks") {
  for (int s : {1, 2}) {
    const Run r = run({"validate", fixtures::scenario_dir(s).string()});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("ok: 6 periods, 10 plants") != std::string::npos);
  }
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  const Run bogus = run({"solve", fixtures::scenario_dir(2).string(),
                         "--objective", "bogus"});
  CHECK(bogus.code == cli::kUsage);
  CHECK_FALSE(bogus.err.empty());
  CHECK(run({"solve", fixtures::scenario_dir(2).string(), "--aff", "-1"}).code ==
        cli::kUsage);
  CHECK(run({"validate", "/nonexistent/workbook"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("validation failures exit 1 and name the cell") {
  fixtures::TempDir dir("cli_invalid");
  copy_scenario(2, dir.path());
  std::string plants;
  {
    std::ifstream f(dir.path() / "PLANT_DATA.csv");
    std::ostringstream s;
    s << f.rdbuf();
    plants = s.str();
  }
  plants.replace(plants.find("3,Fossil Fuel,Natural Gas,5.13"), 30,
                 "3,Fossil Fuel,Natural Gas,25.13");
  std::ofstream(dir.path() / "PLANT_DATA.csv") << plants;
  const Run r = run({"validate", dir.path().string()});
  CHECK(r.code == cli::kValidation);
  CHECK(r.err.find("PLANT_DATA: row '3', column 'Lower Bound'") !=
        std::string::npos);

  fs::remove(dir.path() / "CCS_DATA.csv");
  const Run missing = run({"validate", dir.path().string()});
  CHECK(missing.code == cli::kValidation);
  CHECK(missing.err.find("missing table CCS_DATA") != std::string::npos);
}

TEST_CASE("infeasible scenario exits 4 and writes only the manifest") {
  fixtures::TempDir dir("cli_s1");
  copy_scenario(1, dir.path());
  const Run r = run({"solve", dir.path().string(), "--objective", "min_budget",
                     "--aff", "0.2"});
  CHECK(r.code == cli::kInfeasible);
  CHECK(r.out.find("status: infeasible") != std::string::npos);
  CHECK(fs::exists(dir.path() / "results" / "manifest.json"));
  CHECK_FALSE(fs::exists(dir.path() / "results" / "SUMMARY.csv"));
}

TEST_CASE("feasible solve exits 0 and writes results") {
  fixtures::TempDir dir("cli_tiny");
  write_workbook(dir.path(),
                 from_instance(fixtures::tiny_instance(2), Objective::kMinBudget));
  const fs::path mps = dir.path() / "model.mps";
  const Run r = run({"solve", dir.path().string(), "--mps-export", mps.string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("status: optimal") != std::string::npos);
  CHECK(r.out.find("period 2: emissions") != std::string::npos);
  CHECK(fs::exists(mps));
  CHECK(fs::exists(mps.string() + ".names.csv"));
  CHECK(fs::exists(dir.path() / "results" / "RESULTS_PERIOD_2.csv"));
  CHECK(fs::exists(dir.path() / "results" / "SUMMARY.csv"));
}

TEST_CASE("node cap exits 3") {
  fixtures::TempDir dir("cli_cap");
  copy_scenario(2, dir.path());
  const Run r = run({"solve", dir.path().string(), "--objective", "min_budget",
                     "--aff", "0.2", "--node-cap", "1"});
  CHECK(r.code == cli::kLimits);
}

TEST_CASE("template command checks the period count") {
  fixtures::TempDir dir("cli_template");
  CHECK(run({"template", (dir.path() / "six").string(), "6"}).code == cli::kOk);
  CHECK(read_workbook(dir.path() / "six").num_periods == 6);
  CHECK(run({"template", (dir.path() / "zero").string(), "0"}).code ==
        cli::kUsage);
  CHECK(run({"template", (dir.path() / "many").string(), "51"}).code ==
        cli::kUsage);
}
