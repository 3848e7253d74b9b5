#pragma once

#include <limits>
#include <string>
#include <vector>

namespace decarb {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct LinearTerm {
  int var = 0;
  double coef = 0.0;
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  bool integer = false;
  double objective = 0.0;

  bool is_binary() const { return integer && lower >= 0.0 && upper <= 1.0; }
  bool is_fixed() const { return lower == upper; }
};

struct Constraint {
  std::string name;
  std::vector<LinearTerm> terms;
  RowSense sense = RowSense::kEqual;
  double rhs = 0.0;
};

// Minimisation problem: min c'x + offset s.t. rows, lower <= x <= upper,
// integrality on flagged variables.
struct MilpProblem {
  std::string name = "MODEL";
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  double objective_offset = 0.0;

  int num_variables() const { return static_cast<int>(variables.size()); }
  int num_constraints() const { return static_cast<int>(constraints.size()); }

  int add_variable(Variable v) {
    variables.push_back(std::move(v));
    return num_variables() - 1;
  }
  int add_constraint(Constraint c) {
    constraints.push_back(std::move(c));
    return num_constraints() - 1;
  }

  double evaluate_objective(const std::vector<double>& x) const;
  // Largest absolute row violation of `x` (bounds excluded).
  double max_row_violation(const std::vector<double>& x) const;
  // Largest absolute bound violation of `x`.
  double max_bound_violation(const std::vector<double>& x) const;
};

// Throws std::invalid_argument describing the first structural defect:
// out-of-range variable index, non-finite coefficient or rhs, NaN bounds,
// lower > upper.
void check_problem(const MilpProblem& problem);

}  // namespace decarb
