#include "decarb/milp_problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace decarb {

namespace {

double row_activity(const Constraint& row, const std::vector<double>& x) {
  double sum = 0.0;
  for (const LinearTerm& t : row.terms) sum += t.coef * x[t.var];
  return sum;
}

}  // namespace

double MilpProblem::evaluate_objective(const std::vector<double>& x) const {
  double sum = objective_offset;
  for (int j = 0; j < num_variables(); ++j) sum += variables[j].objective * x[j];
  return sum;
}

double MilpProblem::max_row_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (const Constraint& row : constraints) {
    const double act = row_activity(row, x);
    double viol = 0.0;
    switch (row.sense) {
      case RowSense::kLessEqual:
        viol = act - row.rhs;
        break;
      case RowSense::kGreaterEqual:
        viol = row.rhs - act;
        break;
      case RowSense::kEqual:
        viol = std::abs(act - row.rhs);
        break;
    }
    worst = std::max(worst, viol);
  }
  return worst;
}

double MilpProblem::max_bound_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    worst = std::max(worst, variables[j].lower - x[j]);
    worst = std::max(worst, x[j] - variables[j].upper);
  }
  return worst;
}

void check_problem(const MilpProblem& problem) {
  const int n = problem.num_variables();
  for (int j = 0; j < n; ++j) {
    const Variable& v = problem.variables[j];
    if (std::isnan(v.lower) || std::isnan(v.upper)) {
      throw std::invalid_argument(
          fmt::format("variable '{}' has a NaN bound", v.name));
    }
    if (v.lower > v.upper) {
      throw std::invalid_argument(
          fmt::format("variable '{}' has lower bound {} > upper bound {}",
                      v.name, v.lower, v.upper));
    }
    if (!std::isfinite(v.objective)) {
      throw std::invalid_argument(fmt::format(
          "variable '{}' has a non-finite objective coefficient", v.name));
    }
  }
  if (!std::isfinite(problem.objective_offset)) {
    throw std::invalid_argument("objective offset is not finite");
  }
  for (const Constraint& row : problem.constraints) {
    if (!std::isfinite(row.rhs)) {
      throw std::invalid_argument(
          fmt::format("constraint '{}' has a non-finite rhs", row.name));
    }
    for (const LinearTerm& t : row.terms) {
      if (t.var < 0 || t.var >= n) {
        throw std::invalid_argument(fmt::format(
            "constraint '{}' references variable index {} outside [0, {})",
            row.name, t.var, n));
      }
      if (!std::isfinite(t.coef)) {
        throw std::invalid_argument(fmt::format(
            "constraint '{}' has a non-finite coefficient on '{}'", row.name,
            problem.variables[t.var].name));
      }
    }
  }
}

}  // namespace decarb
