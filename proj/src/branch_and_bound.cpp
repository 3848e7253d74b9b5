#include "decarb/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <queue>

namespace decarb {

std::string_view to_string(MilpStatus status) {
  switch (status) {
    case MilpStatus::kOptimal: return "optimal";
    case MilpStatus::kInfeasible: return "infeasible";
    case MilpStatus::kUnbounded: return "unbounded";
    case MilpStatus::kLimitReached: return "limit_reached";
    case MilpStatus::kNoIncumbent: return "no_incumbent";
  }
  return "?";
}

double MilpSolution::gap() const {
  if (!has_incumbent()) return kInfinity;
  return std::max(0.0, objective - bound) / std::max(1.0, std::abs(objective));
}

namespace {

struct BoundChange {
  int var;
  double lower;
  double upper;
};

// How a node was created from its parent, for pseudocost updates.
struct BranchRecord {
  int var = -1;
  int direction = 0;      // -1 down, +1 up
  double distance = 0.0;  // change forced on the branching variable
  double parent_objective = 0.0;
};

struct Node {
  long id = 0;
  double bound = -kInfinity;
  std::vector<BoundChange> changes;  // cumulative from the root
  std::shared_ptr<const LpBasis> basis;
  BranchRecord branch;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

using NodeQueue = std::priority_queue<Node, std::vector<Node>, NodeOrder>;

class Search {
 public:
  Search(const MilpProblem& problem, const MilpLimits& limits,
         const MilpOptions& options)
      : problem_(problem),
        limits_(limits),
        options_(options),
        start_(std::chrono::steady_clock::now()) {}

  MilpSolution run() {
    MilpProblem tightened = problem_;
    for (Variable& v : tightened.variables) {
      if (!v.integer) continue;
      v.lower = std::ceil(v.lower - options_.integrality_tol);
      v.upper = std::floor(v.upper + options_.integrality_tol);
      if (v.lower > v.upper) {
        out_.status = MilpStatus::kInfeasible;
        return out_;
      }
    }
    LpRelaxation lp(tightened, options_.lp);
    lp_ = &lp;
    for (int j = 0; j < tightened.num_variables(); ++j) {
      if (tightened.variables[j].integer && !lp.is_eliminated(j)) {
        integers_.push_back(j);
      }
    }

    NodeQueue open;
    std::optional<Node> plunge;
    open.push(Node{next_id_++, -kInfinity, {}, nullptr, {}});
    while (plunge || !open.empty()) {
      if (out_.nodes >= limits_.node_cap || out_of_time()) {
        double open_bound = plunge ? plunge->bound : kInfinity;
        if (!open.empty()) open_bound = std::min(open_bound, open.top().bound);
        out_.bound = std::min({out_.objective, open_bound, pruned_bound_});
        out_.status = out_.has_incumbent() ? MilpStatus::kLimitReached
                                           : MilpStatus::kNoIncumbent;
        return out_;
      }
      Node node;
      if (plunge) {
        node = std::move(*plunge);
        plunge.reset();
      } else {
        node = open.top();
        open.pop();
      }
      if (out_.has_incumbent() && node.bound >= out_.objective - tolerance()) {
        pruned_bound_ = std::min(pruned_bound_, node.bound);
        continue;
      }
      ++out_.nodes;
      apply(node.changes);
      const LpSolution sol = lp.solve(node.basis.get());
      out_.lp_iterations += sol.iterations;
      if (sol.status == LpStatus::kIterationLimit) {
        out_.bound = std::min({out_.objective, node.bound, pruned_bound_});
        if (!open.empty()) out_.bound = std::min(out_.bound, open.top().bound);
        out_.status = out_.has_incumbent() ? MilpStatus::kLimitReached
                                           : MilpStatus::kNoIncumbent;
        return out_;
      }
      if (sol.status == LpStatus::kUnbounded) {
        // Node bounds only touch integer columns, which are bounded, so the
        // improving ray exists everywhere: the problem is unbounded as soon
        // as it has any integer-feasible point.
        out_.status = has_feasible_point(tightened) ? MilpStatus::kUnbounded
                                                    : MilpStatus::kInfeasible;
        out_.values.clear();
        return out_;
      }
      if (sol.status == LpStatus::kInfeasible) continue;
      learn(node, sol.objective);
      if (out_.has_incumbent() && sol.objective >= out_.objective - tolerance()) {
        pruned_bound_ = std::min(pruned_bound_, sol.objective);
        continue;
      }
      const Choice choice = select_branch(tightened, node, sol);
      if (choice.var == kNodeInfeasible) continue;
      if (choice.var < 0) {
        accept(sol, node);
        continue;
      }
      const int branch = choice.var;
      auto basis = std::make_shared<const LpBasis>(sol.basis);
      const double v = sol.values[branch];
      const auto [lo, up] = current_bounds(tightened, node.changes, branch);
      Node down{next_id_++, std::max(sol.objective, choice.down_bound),
                node.changes, basis};
      down.changes.push_back({branch, lo, std::floor(v)});
      down.branch = {branch, -1, v - std::floor(v), sol.objective};
      Node upn{next_id_++, std::max(sol.objective, choice.up_bound),
               node.changes, basis};
      upn.changes.push_back({branch, std::ceil(v), up});
      upn.branch = {branch, +1, std::ceil(v) - v, sol.objective};
      // Dive into one child straight away: upwards while there is no
      // incumbent, otherwise towards the cheaper pseudocost estimate.
      bool dive_up = true;
      if (out_.has_incumbent() &&
          options_.node_selection == NodeRule::kBestBoundPlunge) {
        dive_up = estimate(branch, +1, upn.branch.distance) <=
                  estimate(branch, -1, down.branch.distance);
      }
      if (options_.dive_heuristic &&
          (out_.nodes == 1 || out_.nodes % kDiveEvery == 0)) {
        dive(node, sol);
      }
      Node& dive = dive_up ? upn : down;
      Node& rest = dive_up ? down : upn;
      // Only the plunge child keeps the factorization; queued nodes would
      // hold too much memory.
      auto lean = std::make_shared<LpBasis>(sol.basis);
      lean->factor.reset();
      rest.basis = lean;
      open.push(std::move(rest));
      if (options_.node_selection == NodeRule::kBestBoundPlunge &&
          keep_plunging(sol.objective, open)) {
        plunge = std::move(dive);
      } else {
        dive.basis = lean;
        open.push(std::move(dive));
      }
    }
    if (out_.has_incumbent()) {
      out_.status = MilpStatus::kOptimal;
      out_.bound = std::min(out_.objective, pruned_bound_);
    } else {
      out_.status = MilpStatus::kInfeasible;
    }
    return out_;
  }

 private:
  double tolerance() const {
    return std::max(options_.gap_abs,
                    options_.gap_rel * std::abs(out_.objective));
  }

  bool out_of_time() const {
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start_;
    return elapsed.count() > limits_.time_cap_seconds;
  }

  void apply(const std::vector<BoundChange>& changes) {
    lp_->reset_bounds();
    for (const BoundChange& c : changes) lp_->set_bounds(c.var, c.lower, c.upper);
  }

  static std::pair<double, double> current_bounds(
      const MilpProblem& p, const std::vector<BoundChange>& changes, int var) {
    double lo = p.variables[var].lower;
    double up = p.variables[var].upper;
    for (const BoundChange& c : changes) {
      if (c.var == var) {
        lo = c.lower;
        up = c.upper;
      }
    }
    return {lo, up};
  }

  struct Pseudocost {
    double sum[2] = {0.0, 0.0};
    int count[2] = {0, 0};
  };

  static int side(int direction) { return direction > 0 ? 1 : 0; }

  void learn(const Node& node, double objective) {
    const BranchRecord& b = node.branch;
    if (b.var < 0 || b.distance <= 0.0) return;
    const double gain = std::max(0.0, objective - b.parent_objective);
    record(b.var, b.direction, gain / b.distance);
  }

  // Expected objective increase of moving `var` by `distance`; variables
  // never branched on borrow the average over all variables.
  double estimate(int var, int direction, double distance) const {
    const int s = side(direction);
    const auto it = pseudocost_.find(var);
    if (it != pseudocost_.end() && it->second.count[s] > 0) {
      return distance * it->second.sum[s] / it->second.count[s];
    }
    if (average_count_[s] > 0) return distance * average_sum_[s] / average_count_[s];
    return distance;
  }

  struct Choice {
    int var = -1;
    double down_bound = -kInfinity;
    double up_bound = -kInfinity;
  };
  static constexpr int kNodeInfeasible = -2;
  static constexpr int kReliability = 4;
  static constexpr int kLookahead = 8;
  static constexpr int kProbeIterations = 60;
  static constexpr long kDiveEvery = 1000;

  static double score(double down, double up) {
    return std::max(down, 1e-6) * std::max(up, 1e-6);
  }

  // Reliability branching: candidates are ranked by pseudocost product
  // score; those with too few observations are first evaluated by capped
  // dual-simplex lookaheads, which also feed the pseudocosts. Ties go to
  // the lowest index.
  Choice select_branch(const MilpProblem& p, const Node& node,
                       const LpSolution& sol) {
    const std::vector<double>& x = sol.values;
    struct Candidate {
      int var;
      double down, up, score;
    };
    std::vector<Candidate> cands;
    for (int j : integers_) {
      const double down = x[j] - std::floor(x[j]);
      const double up = std::ceil(x[j]) - x[j];
      if (std::min(down, up) <= options_.integrality_tol) continue;
      cands.push_back({j, down, up,
                       score(estimate(j, -1, down), estimate(j, +1, up))});
    }
    Choice best;
    if (cands.empty()) return best;
    if (options_.branching == BranchRule::kMostFractional) {
      double best_frac = 0.0;
      for (const Candidate& c : cands) {
        const double f = std::min(c.down, c.up);
        if (f > best_frac) {
          best_frac = f;
          best.var = c.var;
        }
      }
      return best;
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& a, const Candidate& b) {
                       if (a.score != b.score) return a.score > b.score;
                       return a.var < b.var;
                     });
    double best_score = -1.0;
    int probed = 0;
    int since_improved = 0;
    bool touched = false;
    for (const Candidate& c : cands) {
      const auto it = pseudocost_.find(c.var);
      const bool reliable =
          it != pseudocost_.end() && it->second.count[0] >= kReliability &&
          it->second.count[1] >= kReliability;
      if (reliable || probed >= kLookahead || sol.basis.empty()) {
        if (c.score > best_score ||
            (c.score == best_score && c.var < best.var)) {
          best_score = c.score;
          best = {c.var, -kInfinity, -kInfinity};
        }
        continue;
      }
      if (since_improved >= kLookahead / 2) continue;
      ++probed;
      touched = true;
      const auto [lo, up] = current_bounds(p, node.changes, c.var);
      const double down_obj = lookahead(node, sol, c.var, lo, std::floor(x[c.var]));
      const double up_obj = lookahead(node, sol, c.var, std::ceil(x[c.var]), up);
      if (down_obj == kInfinity && up_obj == kInfinity) {
        apply(node.changes);
        return {kNodeInfeasible, kInfinity, kInfinity};
      }
      const double down_gain = std::max(0.0, down_obj - sol.objective);
      const double up_gain = std::max(0.0, up_obj - sol.objective);
      if (std::isfinite(down_obj)) record(c.var, -1, down_gain / c.down);
      if (std::isfinite(up_obj)) record(c.var, +1, up_gain / c.up);
      // An infeasible side settles the choice: one child dies at once.
      const double sc = (down_obj == kInfinity || up_obj == kInfinity)
                            ? kInfinity
                            : score(down_gain, up_gain);
      if (sc > best_score || (sc == best_score && c.var < best.var)) {
        best_score = sc;
        best = {c.var, down_obj, up_obj};
        since_improved = 0;
      } else {
        ++since_improved;
      }
      if (sc == kInfinity) break;
    }
    if (touched) apply(node.changes);
    return best;
  }

  // Rounding dive: fix the least fractional integer to its nearest value
  // and re-solve, trying the other side once when that is infeasible.
  void dive(const Node& node, const LpSolution& start) {
    Node probe = node;
    LpSolution cur = start;
    for (std::size_t depth = 0; depth <= integers_.size(); ++depth) {
      int pick = -1;
      double pick_frac = 1.0;
      for (int j : integers_) {
        const double f = std::min(cur.values[j] - std::floor(cur.values[j]),
                                  std::ceil(cur.values[j]) - cur.values[j]);
        if (f > options_.integrality_tol && f < pick_frac) {
          pick_frac = f;
          pick = j;
        }
      }
      if (pick < 0) {
        accept(cur, probe);
        return;
      }
      const double v = cur.values[pick];
      const double near = v - std::floor(v) < 0.5 ? std::floor(v) : std::ceil(v);
      const double other = near == std::floor(v) ? std::ceil(v) : std::floor(v);
      probe.changes.push_back({pick, near, near});
      apply(probe.changes);
      LpSolution next = lp_->solve(&cur.basis);
      out_.lp_iterations += next.iterations;
      if (next.status == LpStatus::kInfeasible) {
        probe.changes.back() = {pick, other, other};
        apply(probe.changes);
        next = lp_->solve(&cur.basis);
        out_.lp_iterations += next.iterations;
      }
      if (next.status != LpStatus::kOptimal) return;
      if (out_.has_incumbent() &&
          next.objective >= out_.objective - tolerance()) {
        return;
      }
      cur = std::move(next);
    }
  }

  double lookahead(const Node& node, const LpSolution& sol, int var,
                   double lower, double upper) {
    apply(node.changes);
    lp_->set_bounds(var, lower, upper);
    const LpSolution r = lp_->probe(sol.basis, kProbeIterations);
    out_.lp_iterations += r.iterations;
    if (r.status == LpStatus::kInfeasible) return kInfinity;
    return r.objective;
  }

  void record(int var, int direction, double unit_gain) {
    Pseudocost& pc = pseudocost_[var];
    pc.sum[side(direction)] += unit_gain;
    ++pc.count[side(direction)];
    average_sum_[side(direction)] += unit_gain;
    ++average_count_[side(direction)];
  }

  // Plunging continues without an incumbent, and afterwards only while the
  // node stays close to the best open bound.
  bool keep_plunging(double objective, const NodeQueue& open) const {
    if (!out_.has_incumbent()) return true;
    if (open.empty()) return true;
    const double best = open.top().bound;
    return objective - best <= 0.25 * (out_.objective - best);
  }

  // Re-solves with every integer column pinned to its rounded value so the
  // continuous part is consistent with exact integers.
  void accept(const LpSolution& sol, const Node& node) {
    std::vector<BoundChange> pinned = node.changes;
    for (int j : integers_) {
      const double r = std::round(sol.values[j]);
      pinned.push_back({j, r, r});
    }
    apply(pinned);
    const LpSolution exact = lp_->solve(&sol.basis);
    out_.lp_iterations += exact.iterations;
    const LpSolution& use = exact.status == LpStatus::kOptimal ? exact : sol;
    if (!out_.has_incumbent() || use.objective < out_.objective) {
      out_.values = use.values;
      out_.objective = use.objective;
    }
  }

  bool has_feasible_point(const MilpProblem& p) const {
    MilpProblem zero = p;
    for (Variable& v : zero.variables) v.objective = 0.0;
    zero.objective_offset = 0.0;
    MilpLimits limits = limits_;
    const MilpSolution s = solve_milp(zero, limits, options_);
    return s.has_incumbent();
  }

  const MilpProblem& problem_;
  const MilpLimits& limits_;
  const MilpOptions& options_;
  std::chrono::steady_clock::time_point start_;
  LpRelaxation* lp_ = nullptr;
  std::vector<int> integers_;
  long next_id_ = 0;
  double pruned_bound_ = kInfinity;  // lowest LP bound among pruned nodes
  std::map<int, Pseudocost> pseudocost_;
  double average_sum_[2] = {0.0, 0.0};
  int average_count_[2] = {0, 0};
  MilpSolution out_;
};

}  // namespace

MilpOptions accelerated_options() {
  MilpOptions options;
  options.branching = BranchRule::kReliability;
  options.node_selection = NodeRule::kBestBoundPlunge;
  return options;
}

MilpSolution solve_milp(const MilpProblem& problem, const MilpLimits& limits,
                        const MilpOptions& options) {
  return Search(problem, limits, options).run();
}

}  // namespace decarb
