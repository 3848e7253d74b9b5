#include <doctest.h>

#include <random>

#include "decarb/branch_and_bound.hpp"
#include "lp_oracle.hpp"
#include "random_problems.hpp"

using namespace decarb;

TEST_CASE("two binary covering problem") {
  MilpProblem p;
  p.add_variable({"x", 0, 1, true, 3});
  p.add_variable({"y", 0, 1, true, 2});
  p.add_constraint({"cover", {{0, 1}, {1, 1}}, RowSense::kGreaterEqual, 1.5});
  const oracle::Result ref = oracle::solve_milp(p);
  REQUIRE(ref.outcome == oracle::Outcome::kOptimal);
  CHECK(ref.objective == doctest::Approx(5.0));
  const MilpSolution s = solve_milp(p);
  REQUIRE(s.status == MilpStatus::kOptimal);
  CHECK(s.values[0] == 1.0);
  CHECK(s.values[1] == 1.0);
  CHECK(s.objective == doctest::Approx(5.0));
  CHECK(std::abs(s.objective - s.bound) <= 1e-6);
}

TEST_CASE("binaries fixed by bounds solve at the root") {
  MilpProblem p;
  for (int j = 0; j < 5; ++j) p.add_variable({"b", 0, 0, true, 1.0 + j});
  const MilpSolution s = solve_milp(p);
  REQUIRE(s.status == MilpStatus::kOptimal);
  CHECK(s.objective == 0.0);
  CHECK(s.nodes == 1);
}

TEST_CASE("integer infeasible with feasible relaxation") {
  MilpProblem p;
  p.add_variable({"x", 0, 1, true, 0});
  p.add_variable({"y", 0, 1, true, 0});
  p.add_constraint({"half", {{0, 2}, {1, 2}}, RowSense::kEqual, 1});
  CHECK(solve_milp(p).status == MilpStatus::kInfeasible);
}

TEST_CASE("unbounded continuous ray with a feasible integer point") {
  MilpProblem p;
  p.add_variable({"b", 0, 1, true, 0});
  p.add_variable({"z", 0, kInfinity, false, -1});
  p.add_constraint({"link", {{0, 1}, {1, -1}}, RowSense::kLessEqual, 0.5});
  CHECK(solve_milp(p).status == MilpStatus::kUnbounded);
}

TEST_CASE("node cap reports the best incumbent and bound") {
  // Knapsack needing several nodes.
  MilpProblem p;
  const double w[] = {5, 7, 4, 3, 8, 6, 9, 2};
  const double v[] = {-9, -11, -6, -4, -13, -8, -14, -3};
  Constraint cap{"cap", {}, RowSense::kLessEqual, 20.5};
  for (int j = 0; j < 8; ++j) {
    p.add_variable({"k", 0, 1, true, v[j]});
    cap.terms.push_back({j, w[j]});
  }
  p.add_constraint(cap);
  const MilpSolution full = solve_milp(p);
  REQUIRE(full.status == MilpStatus::kOptimal);
  REQUIRE(full.nodes > 2);
  const MilpSolution capped = solve_milp(p, MilpLimits{1});
  CHECK((capped.status == MilpStatus::kNoIncumbent ||
         capped.status == MilpStatus::kLimitReached));
  CHECK(capped.nodes == 1);
  CHECK(capped.bound <= full.objective + 1e-9);
}

TEST_CASE("random MILPs agree with exhaustive enumeration") {
  std::mt19937 rng(4242);
  int optimal = 0;
  int infeasible = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const MilpProblem p = testgen::random_milp(rng, 12, 2, 6);
    const oracle::Result ref = oracle::solve_milp(p);
    const MilpSolution s = solve_milp(p);
    CAPTURE(trial);
    if (ref.outcome == oracle::Outcome::kOptimal) {
      ++optimal;
      REQUIRE(s.status == MilpStatus::kOptimal);
      CHECK(std::abs(s.objective - ref.objective) <= 1e-6);
      CHECK(std::abs(s.objective - s.bound) <=
            std::max(1e-6, 1e-6 * std::abs(s.objective)));
      CHECK(p.max_row_violation(s.values) <= 1e-7);
      for (int j = 0; j < p.num_variables(); ++j) {
        if (!p.variables[j].integer) continue;
        CHECK(std::abs(s.values[j] - std::round(s.values[j])) <= 1e-6);
      }
    } else {
      ++infeasible;
      CHECK(s.status == MilpStatus::kInfeasible);
    }
  }
  CHECK(optimal > 100);
  CHECK(infeasible > 10);
}

TEST_CASE("repeated solves are identical") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const MilpProblem p = testgen::random_milp(rng, 12, 2, 6);
    const MilpSolution a = solve_milp(p);
    const MilpSolution b = solve_milp(p);
    CHECK(a.status == b.status);
    CHECK(a.nodes == b.nodes);
    CHECK(a.values == b.values);
  }
}
