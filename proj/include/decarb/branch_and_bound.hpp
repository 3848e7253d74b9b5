#pragma once

#include <string_view>
#include <vector>

#include "decarb/milp_problem.hpp"
#include "decarb/simplex.hpp"

namespace decarb {

enum class MilpStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kLimitReached,  // cap hit with an incumbent; bound and gap are valid
  kNoIncumbent,   // cap hit before any integral solution was found
};

std::string_view to_string(MilpStatus status);

struct MilpLimits {
  long node_cap = 1000000;
  double time_cap_seconds = kInfinity;
};

// Which fractional variable a node splits on.
enum class BranchRule {
  kMostFractional,  // ties to the lowest index
  kReliability,     // pseudocosts seeded by capped dual-simplex lookaheads
};

// Which open node is evaluated next.
enum class NodeRule {
  kBestBound,        // ties to the lowest node id
  kBestBoundPlunge,  // best bound, but dive into a child right after branching
};

struct MilpOptions {
  SimplexOptions lp;
  double integrality_tol = 1e-6;
  double gap_abs = 1e-6;
  double gap_rel = 1e-6;
  BranchRule branching = BranchRule::kMostFractional;
  NodeRule node_selection = NodeRule::kBestBound;
  // Rounding dive from the root LP (and periodically afterwards) to find
  // incumbents early. Does not change which node or variable is chosen.
  bool dive_heuristic = true;
};

// The faster search used by the command-line tool and the scenario runs.
MilpOptions accelerated_options();

struct MilpSolution {
  MilpStatus status = MilpStatus::kNoIncumbent;
  std::vector<double> values;  // incumbent, empty when there is none
  double objective = kInfinity;
  double bound = -kInfinity;
  long nodes = 0;
  long lp_iterations = 0;

  bool has_incumbent() const { return !values.empty(); }
  // (objective - bound) / max(1, |objective|); infinity without incumbent.
  double gap() const;
};

// Branch-and-bound over the LP relaxation. By default nodes are explored
// best-bound first (ties by lowest node id) and split on the most fractional
// integer variable (ties by lowest index); children re-optimise from the
// parent basis with the dual simplex. A node is pruned once its bound is
// within max(gap_abs, gap_rel * |incumbent|) of the incumbent. Every rule is
// deterministic.
MilpSolution solve_milp(const MilpProblem& problem, const MilpLimits& limits = {},
                        const MilpOptions& options = {});

}  // namespace decarb
