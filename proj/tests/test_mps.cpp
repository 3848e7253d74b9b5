#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "decarb/model_builder.hpp"
#include "decarb/mps_writer.hpp"
#include "fixtures.hpp"
#include "random_problems.hpp"

using namespace decarb;

namespace {

// Minimal reader for the subset the writer produces: whitespace separated
// fields, names without blanks.
MilpProblem read_back(const std::string& text) {
  MilpProblem p;
  std::map<std::string, int> rows;
  std::map<std::string, int> cols;
  std::istringstream in(text);
  std::string line;
  std::string section;
  bool integer = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] != ' ') {
      std::istringstream hs(line);
      hs >> section;
      continue;
    }
    std::istringstream ls(line);
    std::vector<std::string> f;
    for (std::string tok; ls >> tok;) f.push_back(tok);
    if (section == "ROWS") {
      if (f[0] == "N") continue;
      Constraint c;
      c.name = f[1];
      c.sense = f[0] == "L"   ? RowSense::kLessEqual
                : f[0] == "G" ? RowSense::kGreaterEqual
                              : RowSense::kEqual;
      rows[f[1]] = p.add_constraint(c);
    } else if (section == "COLUMNS") {
      if (f.size() == 3 && f[1] == "'MARKER'") {
        integer = f[2] == "'INTORG'";
        continue;
      }
      if (!cols.count(f[0])) {
        Variable v;
        v.name = f[0];
        v.integer = integer;
        cols[f[0]] = p.add_variable(v);
      }
      const int j = cols[f[0]];
      for (size_t e = 1; e + 1 < f.size(); e += 2) {
        const double a = std::stod(f[e + 1]);
        if (f[e] == "COST") {
          p.variables[j].objective = a;
        } else {
          p.constraints[rows.at(f[e])].terms.push_back({j, a});
        }
      }
    } else if (section == "RHS") {
      if (f[1] == "COST") {
        p.objective_offset = -std::stod(f[2]);
      } else {
        p.constraints[rows.at(f[1])].rhs = std::stod(f[2]);
      }
    } else if (section == "BOUNDS") {
      Variable& v = p.variables[cols.at(f[2])];
      if (f[0] == "BV") {
        v.integer = true;
        v.lower = 0.0;
        v.upper = 1.0;
      } else if (f[0] == "FX") {
        v.lower = v.upper = std::stod(f[3]);
      } else if (f[0] == "FR") {
        v.lower = -kInfinity;
      } else if (f[0] == "MI") {
        v.lower = -kInfinity;
      } else if (f[0] == "LO") {
        v.lower = std::stod(f[3]);
      } else if (f[0] == "UP") {
        v.upper = std::stod(f[3]);
      }
    }
  }
  return p;
}

bool close(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a));
}

void check_same(const MilpProblem& a, const MilpProblem& b) {
  REQUIRE(a.num_variables() == b.num_variables());
  REQUIRE(a.num_constraints() == b.num_constraints());
  CHECK(close(a.objective_offset, b.objective_offset));
  for (int j = 0; j < a.num_variables(); ++j) {
    CAPTURE(j);
    CHECK(close(a.variables[j].objective, b.variables[j].objective));
    CHECK(close(a.variables[j].lower, b.variables[j].lower));
    CHECK(close(a.variables[j].upper, b.variables[j].upper));
    CHECK(a.variables[j].integer == b.variables[j].integer);
  }
  for (int i = 0; i < a.num_constraints(); ++i) {
    CAPTURE(i);
    const Constraint& x = a.constraints[i];
    const Constraint& y = b.constraints[i];
    CHECK(x.sense == y.sense);
    CHECK(close(x.rhs, y.rhs));
    std::map<int, double> xt;
    std::map<int, double> yt;
    for (const LinearTerm& t : x.terms) xt[t.var] += t.coef;
    for (const LinearTerm& t : y.terms) yt[t.var] += t.coef;
    std::erase_if(xt, [](const auto& kv) { return kv.second == 0.0; });
    REQUIRE(xt.size() == yt.size());
    for (const auto& [var, coef] : xt) CHECK(close(coef, yt[var]));
  }
}

}  // namespace

TEST_CASE("knapsack export") {
  MilpProblem p;
  p.name = "KNAPSACK";
  p.add_variable({"pick_a", 0, 1, true, -3});
  p.add_variable({"pick_b", 0, 1, true, -4});
  p.add_constraint({"weight", {{0, 2}, {1, 3}}, RowSense::kLessEqual, 4});
  const MpsExport out = export_mps(p);
  const std::string expected =
      "NAME          KNAPSACK\n"
      "ROWS\n"
      " N  COST\n"
      " L  R0000001\n"
      "COLUMNS\n"
      "    C0000001  COST                -3   R0000001             2\n"
      "    C0000002  COST                -4   R0000001             3\n"
      "RHS\n"
      "    RHS       R0000001             4\n"
      "BOUNDS\n"
      " BV BND       C0000001             1\n"
      " BV BND       C0000002             1\n"
      "ENDATA\n";
  CHECK(out.text == expected);
  CHECK(out.name_map_csv() ==
        "mps_name,name\nCOST,\"objective\"\nR0000001,\"weight\"\n"
        "C0000001,\"pick_a\"\nC0000002,\"pick_b\"\n");
}

TEST_CASE("problems without rows still export") {
  MilpProblem p;
  p.add_variable({"free", -kInfinity, kInfinity, false, 1});
  p.add_variable({"count", 0, 5, true, 2});
  const MpsExport out = export_mps(p);
  CHECK(out.text.find("ROWS\n N  COST\nCOLUMNS\n") != std::string::npos);
  CHECK(out.text.find("'INTORG'") != std::string::npos);
  CHECK(out.text.find(" FR BND       C0000001") != std::string::npos);
  check_same(p, read_back(out.text));
}

TEST_CASE("random problems read back unchanged") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    CAPTURE(trial);
    MilpProblem p = trial % 2 ? testgen::random_lp(rng, 6, 5)
                              : testgen::random_milp(rng, 8, 3, 5);
    p.objective_offset = trial % 3 == 0 ? 1.25 : 0.0;
    check_same(p, read_back(export_mps(p).text));
  }
}

TEST_CASE("planning model reads back unchanged") {
  Instance inst = fixtures::scenario(2);
  inst.aff = 0.2;
  const PlanningModel m = build_model(inst, Objective::kMinBudget);
  const MpsExport out = export_mps(m.problem);
  check_same(m.problem, read_back(out.text));
  CHECK(out.names.size() ==
        static_cast<size_t>(1 + m.problem.num_constraints() +
                            m.problem.num_variables()));
}
