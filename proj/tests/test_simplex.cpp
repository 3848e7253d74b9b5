#include <doctest.h>

#include <random>

#include "decarb/simplex.hpp"
#include "lp_oracle.hpp"
#include "random_problems.hpp"

using namespace decarb;

namespace {

MilpProblem two_var_lp() {
  MilpProblem p;
  p.add_variable({"x", 0, 3, false, -1});
  p.add_variable({"y", 0, 3, false, -1});
  p.add_constraint({"cap", {{0, 1}, {1, 2}}, RowSense::kLessEqual, 4});
  return p;
}

LpStatus expected(oracle::Outcome o) {
  switch (o) {
    case oracle::Outcome::kOptimal: return LpStatus::kOptimal;
    case oracle::Outcome::kInfeasible: return LpStatus::kInfeasible;
    case oracle::Outcome::kUnbounded: return LpStatus::kUnbounded;
  }
  return LpStatus::kIterationLimit;
}

}  // namespace

TEST_CASE("single active bound") {
  MilpProblem p;
  p.add_variable({"x", 0, 10, false, 1});
  p.add_constraint({"lo", {{0, 1}}, RowSense::kGreaterEqual, 3});
  const LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.values[0] == doctest::Approx(3.0));
  CHECK(s.objective == doctest::Approx(3.0));
}

TEST_CASE("two variable polytope matches vertex enumeration") {
  const MilpProblem p = two_var_lp();
  const oracle::Result ref = oracle::solve_lp(p);
  REQUIRE(ref.outcome == oracle::Outcome::kOptimal);
  CHECK(ref.objective == doctest::Approx(-3.5));
  const LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.values[0] == doctest::Approx(3.0));
  CHECK(s.values[1] == doctest::Approx(0.5));
  CHECK(s.objective == doctest::Approx(ref.objective));
}

TEST_CASE("empty feasible set") {
  MilpProblem p;
  p.add_variable({"x", -kInfinity, kInfinity, false, 0});
  p.add_constraint({"a", {{0, 1}}, RowSense::kGreaterEqual, 1});
  p.add_constraint({"b", {{0, 1}}, RowSense::kLessEqual, 0});
  CHECK(solve_lp(p).status == LpStatus::kInfeasible);
}

TEST_CASE("unbounded ray") {
  MilpProblem p;
  p.add_variable({"x", 0, kInfinity, false, -1});
  p.add_variable({"y", 0, kInfinity, false, 0});
  p.add_constraint({"a", {{0, 1}, {1, -1}}, RowSense::kLessEqual, 2});
  CHECK(solve_lp(p).status == LpStatus::kUnbounded);
}

TEST_CASE("free variable and equality rows") {
  MilpProblem p;
  p.add_variable({"x", -kInfinity, kInfinity, false, 1});
  p.add_variable({"y", 0, 5, false, 0.5});
  p.add_constraint({"e", {{0, 1}, {1, 1}}, RowSense::kEqual, -4});
  p.add_constraint({"g", {{0, 1}, {1, -1}}, RowSense::kGreaterEqual, -6});
  const LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.values[0] == doctest::Approx(-5.0));
  CHECK(s.values[1] == doctest::Approx(1.0));
}

TEST_CASE("presolve drops rows emptied by fixed variables") {
  MilpProblem p;
  p.add_variable({"x", 2, 2, false, 1});
  p.add_constraint({"a", {{0, 1}}, RowSense::kLessEqual, 1});
  CHECK(solve_lp(p).status == LpStatus::kInfeasible);
  p.constraints[0].rhs = 2;
  const LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.objective == 2.0);
}

TEST_CASE("degenerate vertex terminates") {
  // Many constraints through the origin.
  MilpProblem p;
  for (int j = 0; j < 4; ++j) p.add_variable({"x", 0, kInfinity, false, -1});
  for (int i = 0; i < 12; ++i) {
    Constraint c{"d", {}, RowSense::kLessEqual, 0};
    for (int j = 0; j < 4; ++j) c.terms.push_back({j, double((i * 7 + j * 3) % 5) - 1});
    p.add_constraint(c);
  }
  p.add_constraint({"box", {{0, 1}, {1, 1}, {2, 1}, {3, 1}}, RowSense::kLessEqual, 1});
  const oracle::Result ref = oracle::solve_lp(p);
  const LpSolution s = solve_lp(p);
  REQUIRE(s.status == expected(ref.outcome));
  if (ref.outcome == oracle::Outcome::kOptimal) {
    CHECK(s.objective == doctest::Approx(ref.objective));
  }
}

TEST_CASE("rejects malformed problems") {
  MilpProblem p;
  p.add_variable({"x", 1, 0, false, 0});
  CHECK_THROWS_AS(solve_lp(p), std::invalid_argument);
  MilpProblem q;
  q.add_variable({"x", 0, 1, false, 0});
  q.add_constraint({"a", {{3, 1}}, RowSense::kLessEqual, 1});
  CHECK_THROWS_AS(solve_lp(q), std::invalid_argument);
}

TEST_CASE("random LPs agree with vertex enumeration") {
  std::mt19937 rng(20240607);
  int counts[3] = {0, 0, 0};
  for (int trial = 0; trial < 600; ++trial) {
    const MilpProblem p = testgen::random_lp(rng, 8, 8);
    const oracle::Result ref = oracle::solve_lp(p);
    const LpSolution s = solve_lp(p);
    CAPTURE(trial);
    REQUIRE(s.status == expected(ref.outcome));
    ++counts[static_cast<int>(ref.outcome)];
    if (ref.outcome == oracle::Outcome::kOptimal) {
      CHECK(std::abs(s.objective - ref.objective) <= 1e-6);
      CHECK(p.max_bound_violation(s.values) <= 1e-9);
      CHECK(p.max_row_violation(s.values) <= 1e-7);
    }
  }
  // The generator should exercise every outcome.
  CHECK(counts[0] > 50);
  CHECK(counts[1] > 50);
  CHECK(counts[2] > 20);
}

TEST_CASE("warm start after bound changes matches cold solve") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const MilpProblem p = testgen::random_lp(rng, 8, 8);
    LpRelaxation lp(p);
    const LpSolution root = lp.solve();
    if (root.status != LpStatus::kOptimal) continue;
    MilpProblem q = p;
    for (int j = 0; j < p.num_variables(); ++j) {
      if (lp.is_eliminated(j)) continue;
      const double v = root.values[j];
      const double lo = std::floor(v) == v ? v - 1 : std::floor(v);
      if (trial % 2 == 0 && lo >= p.variables[j].lower) {
        q.variables[j].upper = lo;
      } else if (std::ceil(v) <= p.variables[j].upper) {
        q.variables[j].lower = std::max(q.variables[j].lower, std::ceil(v) == v ? v + 1 : std::ceil(v));
      } else {
        continue;
      }
      if (q.variables[j].lower > q.variables[j].upper) q.variables[j] = p.variables[j];
      lp.set_bounds(j, q.variables[j].lower, q.variables[j].upper);
      break;
    }
    const LpSolution warm = lp.solve(&root.basis);
    const oracle::Result ref = oracle::solve_lp(q);
    CAPTURE(trial);
    REQUIRE(warm.status == expected(ref.outcome));
    if (ref.outcome == oracle::Outcome::kOptimal) {
      CHECK(std::abs(warm.objective - ref.objective) <= 1e-6);
    }
  }
}
