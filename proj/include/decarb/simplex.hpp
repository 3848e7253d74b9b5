#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "decarb/kernels.hpp"
#include "decarb/milp_problem.hpp"

namespace decarb {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string_view to_string(LpStatus status);

enum class VarStatus : unsigned char {
  kBasic,
  kAtLower,
  kAtUpper,
  kFree,   // nonbasic free variable held at zero
  kFixed,  // nonbasic with lower == upper
};

struct EtaFile;

// Simplex basis over the presolved columns: structurals, then one logical
// per row, then one artificial per row.
struct LpBasis {
  std::vector<VarStatus> status;
  std::vector<int> head;  // basic column at each row position
  // Factorization of `head` left by the solve that produced this basis.
  // Optional; a warm start reuses it instead of refactoring.
  std::shared_ptr<const EtaFile> factor;

  bool empty() const { return status.empty(); }
};

struct SimplexOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  int refactor_period = 50;
  long max_iterations = 500000;
  kernels::Dispatch dispatch;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> values;  // in the original variable space
  LpBasis basis;
  long iterations = 0;
};

// LP relaxation of a MilpProblem (integrality ignored). Fixed variables are
// eliminated once at construction; the remaining variables may have their
// bounds tightened or restored between solves, and a previous basis can be
// supplied to re-optimise with the dual simplex.
class LpRelaxation {
 public:
  // Throws std::invalid_argument when check_problem() fails.
  explicit LpRelaxation(const MilpProblem& problem, SimplexOptions options = {});

  // Changes the bounds of an original variable. Throws std::invalid_argument
  // for variables removed by presolve.
  void set_bounds(int var, double lower, double upper);
  void reset_bounds();
  bool is_eliminated(int var) const { return column_of_[var] < 0; }

  LpSolution solve(const LpBasis* warm_start = nullptr) const;

  // Dual-simplex lookahead from `warm_start` under the current bounds, used
  // for strong branching. Returns kOptimal or kInfeasible when settled within
  // `iteration_limit` pivots; otherwise kIterationLimit with `objective` set
  // to the dual bound reached (-inf when none). Values and basis are left
  // empty.
  LpSolution probe(const LpBasis& warm_start, long iteration_limit) const;

  int num_rows() const { return rows_; }
  int num_columns() const { return cols_; }
  int num_original_variables() const {
    return static_cast<int>(column_of_.size());
  }

 private:
  friend class SimplexEngine;

  SimplexOptions options_;
  int rows_ = 0;
  int cols_ = 0;
  bool trivially_infeasible_ = false;
  kernels::SparseColumns matrix_;
  std::vector<double> rhs_;
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> base_lower_;
  std::vector<double> base_upper_;
  std::vector<double> logical_lower_;
  std::vector<double> logical_upper_;
  double objective_offset_ = 0.0;
  std::vector<int> column_of_;        // original var -> column, -1 if fixed
  std::vector<int> variable_of_;      // column -> original var
  std::vector<double> fixed_value_;   // original var values when eliminated
};

// Solves the LP relaxation of `problem` from a cold start.
LpSolution solve_lp(const MilpProblem& problem,
                    const SimplexOptions& options = {});

}  // namespace decarb
