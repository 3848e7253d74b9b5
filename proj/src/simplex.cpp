#include "decarb/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace decarb {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
  }
  return "?";
}

LpRelaxation::LpRelaxation(const MilpProblem& problem, SimplexOptions options)
    : options_(options) {
  check_problem(problem);
  const int n_orig = problem.num_variables();
  column_of_.assign(n_orig, -1);
  fixed_value_.assign(n_orig, 0.0);
  for (int j = 0; j < n_orig; ++j) {
    const Variable& v = problem.variables[j];
    if (v.lower == v.upper) {
      if (!std::isfinite(v.lower)) {
        throw std::invalid_argument(
            fmt::format("variable '{}' is fixed at an infinite value", v.name));
      }
      fixed_value_[j] = v.lower;
      objective_offset_ += v.objective * v.lower;
      continue;
    }
    column_of_[j] = cols_++;
    variable_of_.push_back(j);
    cost_.push_back(v.objective);
    lower_.push_back(v.lower);
    upper_.push_back(v.upper);
  }
  objective_offset_ += problem.objective_offset;
  base_lower_ = lower_;
  base_upper_ = upper_;

  // Gather surviving rows with merged duplicate terms.
  std::vector<std::vector<std::pair<int, double>>> kept_rows;
  for (const Constraint& row : problem.constraints) {
    std::map<int, double> merged;
    double rhs = row.rhs;
    for (const LinearTerm& t : row.terms) {
      const int col = column_of_[t.var];
      if (col < 0) {
        rhs -= t.coef * fixed_value_[t.var];
      } else {
        merged[col] += t.coef;
      }
    }
    std::erase_if(merged, [](const auto& kv) { return kv.second == 0.0; });
    if (merged.empty()) {
      const double tol = 1e-9 * std::max(1.0, std::abs(row.rhs));
      const bool ok = (row.sense == RowSense::kLessEqual && 0.0 <= rhs + tol) ||
                      (row.sense == RowSense::kGreaterEqual && 0.0 >= rhs - tol) ||
                      (row.sense == RowSense::kEqual && std::abs(rhs) <= tol);
      if (!ok) trivially_infeasible_ = true;
      continue;
    }
    kept_rows.emplace_back(merged.begin(), merged.end());
    rhs_.push_back(rhs);
    switch (row.sense) {
      case RowSense::kLessEqual:
        logical_lower_.push_back(0.0);
        logical_upper_.push_back(kInfinity);
        break;
      case RowSense::kGreaterEqual:
        logical_lower_.push_back(-kInfinity);
        logical_upper_.push_back(0.0);
        break;
      case RowSense::kEqual:
        logical_lower_.push_back(0.0);
        logical_upper_.push_back(0.0);
        break;
    }
  }
  rows_ = static_cast<int>(kept_rows.size());

  matrix_.rows = rows_;
  matrix_.cols = cols_;
  matrix_.start.assign(cols_ + 1, 0);
  for (const auto& row : kept_rows) {
    for (const auto& [col, coef] : row) ++matrix_.start[col + 1];
  }
  std::partial_sum(matrix_.start.begin(), matrix_.start.end(),
                   matrix_.start.begin());
  matrix_.index.resize(matrix_.start.back());
  matrix_.value.resize(matrix_.start.back());
  std::vector<int> fill(matrix_.start.begin(), matrix_.start.end() - 1);
  for (int i = 0; i < rows_; ++i) {
    for (const auto& [col, coef] : kept_rows[i]) {
      const int p = fill[col]++;
      matrix_.index[p] = i;
      matrix_.value[p] = coef;
    }
  }
}

void LpRelaxation::set_bounds(int var, double lower, double upper) {
  const int col = column_of_.at(var);
  if (col < 0) {
    throw std::invalid_argument(
        fmt::format("variable {} was eliminated by presolve", var));
  }
  lower_[col] = lower;
  upper_[col] = upper;
}

void LpRelaxation::reset_bounds() {
  lower_ = base_lower_;
  upper_ = base_upper_;
}

// Product-form inverse: elementary column transformations stored back to
// back. Eta e pivots on row[e] and holds off-pivot entries
// [start[e], start[e + 1]).
struct EtaFile {
  std::vector<int> row;
  std::vector<double> pivot;
  std::vector<int> start{0};
  std::vector<int> index;
  std::vector<double> value;
  std::vector<int> head;  // basis the file factorizes, set when exported

  int size() const { return static_cast<int>(row.size()); }
  void clear() {
    row.clear();
    pivot.clear();
    start.assign(1, 0);
    index.clear();
    value.clear();
  }
  void open(int r, double p) {
    row.push_back(r);
    pivot.push_back(p);
  }
  void close() { start.push_back(static_cast<int>(index.size())); }
};

namespace {

constexpr double kDropTol = 1e-14;

}  // namespace

class SimplexEngine {
 public:
  explicit SimplexEngine(const LpRelaxation& lp)
      : lp_(lp),
        opt_(lp.options_),
        m_(lp.rows_),
        n_(lp.cols_),
        total_(lp.cols_ + 2 * lp.rows_) {
    lo_.resize(total_);
    up_.resize(total_);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lp.lower_[j];
      up_[j] = lp.upper_[j];
    }
    for (int i = 0; i < m_; ++i) {
      lo_[n_ + i] = lp.logical_lower_[i];
      up_[n_ + i] = lp.logical_upper_[i];
      lo_[n_ + m_ + i] = 0.0;
      up_[n_ + m_ + i] = 0.0;
    }
    x_.assign(total_, 0.0);
    cost_.assign(total_, 0.0);
    d_.assign(total_, 0.0);
    mask_.assign(total_, kernels::kNone);
    status_.assign(total_, VarStatus::kFixed);
    head_.assign(m_, -1);
    art_sign_.assign(m_, 1.0);
    work_.assign(m_, 0.0);
    work2_.assign(m_, 0.0);
  }

  // Lookahead mode: warm start only, dual simplex capped at `limit`
  // iterations. On the cap the objective is the dual bound reached so far.
  LpSolution probe(const LpBasis& warm, long limit) {
    LpSolution out;
    out.objective = -kInfinity;
    if (lp_.trivially_infeasible_) {
      out.status = LpStatus::kInfeasible;
      return out;
    }
    for (int j = 0; j < n_; ++j) {
      if (lo_[j] > up_[j]) {
        out.status = LpStatus::kInfeasible;
        return out;
      }
    }
    out.status = LpStatus::kIterationLimit;
    if (!warm_start(warm)) return out;
    probe_limit_ = limit;
    set_phase2_costs();
    compute_duals();
    if (!dual_feasible()) return out;
    const LpStatus st = dual_simplex();
    out.iterations = iterations_;
    if (st == LpStatus::kInfeasible) {
      out.status = st;
      return out;
    }
    if (st != LpStatus::kOptimal && !probe_stopped_) return out;
    out.status = st;
    out.objective = lp_.objective_offset_;
    for (int j = 0; j < n_; ++j) out.objective += lp_.cost_[j] * x_[j];
    return out;
  }

  LpSolution run(const LpBasis* warm) {
    LpSolution out;
    for (int j = 0; j < n_; ++j) {
      if (lo_[j] > up_[j]) {
        out.status = LpStatus::kInfeasible;
        return out;
      }
    }
    if (lp_.trivially_infeasible_) {
      out.status = LpStatus::kInfeasible;
      return out;
    }

    LpStatus status = LpStatus::kIterationLimit;
    bool solved = false;
    if (warm != nullptr && warm_start(*warm)) {
      status = reoptimize();
      solved = status != LpStatus::kIterationLimit;
    }
    if (!solved) {
      iterations_warm_ = iterations_;
      cold_start();
      status = two_phase();
    }
    out.status = status;
    out.iterations = iterations_;
    if (status == LpStatus::kOptimal) {
      out.values = original_values();
      out.objective = lp_.objective_offset_;
      for (int j = 0; j < n_; ++j) out.objective += lp_.cost_[j] * x_[j];
      out.basis.status = status_;
      out.basis.head = head_;
      auto factor = std::make_shared<EtaFile>(etas_);
      factor->head = head_;
      out.basis.factor = std::move(factor);
    }
    return out;
  }

 private:
  // ---- column access -----------------------------------------------------

  bool is_logical(int j) const { return j >= n_ && j < n_ + m_; }
  bool is_artificial(int j) const { return j >= n_ + m_; }
  int row_of_unit(int j) const { return is_logical(j) ? j - n_ : j - n_ - m_; }

  void scatter_column(int j, double scale, std::vector<double>& w) const {
    if (j < n_) {
      const auto& a = lp_.matrix_;
      for (int p = a.start[j]; p < a.start[j + 1]; ++p) {
        w[a.index[p]] += scale * a.value[p];
      }
    } else if (is_logical(j)) {
      w[j - n_] += scale;
    } else {
      const int i = j - n_ - m_;
      w[i] += scale * art_sign_[i];
    }
  }

  void load_column(int j, std::vector<double>& w) const {
    std::fill(w.begin(), w.end(), 0.0);
    scatter_column(j, 1.0, w);
  }

  // ---- product-form inverse ---------------------------------------------

  void ftran(std::vector<double>& w) const {
    const EtaFile& f = etas_;
    for (int e = 0; e < f.size(); ++e) {
      double wr = w[f.row[e]];
      if (wr == 0.0) continue;
      wr /= f.pivot[e];
      w[f.row[e]] = wr;
      for (int p = f.start[e]; p < f.start[e + 1]; ++p) {
        w[f.index[p]] -= f.value[p] * wr;
      }
    }
  }

  void btran(std::vector<double>& y) const {
    const EtaFile& f = etas_;
    for (int e = f.size() - 1; e >= 0; --e) {
      double s = y[f.row[e]];
      for (int p = f.start[e]; p < f.start[e + 1]; ++p) {
        s -= y[f.index[p]] * f.value[p];
      }
      y[f.row[e]] = s / f.pivot[e];
    }
  }

  void push_eta(int row, const std::vector<double>& alpha) {
    etas_.open(row, alpha[row]);
    for (int i = 0; i < m_; ++i) {
      if (i != row && std::abs(alpha[i]) > kDropTol) {
        etas_.index.push_back(i);
        etas_.value.push_back(alpha[i]);
      }
    }
    etas_.close();
  }

  // Rebuilds the eta file from the identity. Columns that turn out linearly
  // dependent leave the basis and the uncovered rows get their logicals.
  void refactor() {
    etas_.clear();
    updates_ = 0;
    std::vector<int> owner(m_, -1);
    std::vector<int> structurals;
    std::vector<int> dependent;
    for (int r = 0; r < m_; ++r) {
      const int j = head_[r];
      if (j < 0 || j >= total_ || status_[j] != VarStatus::kBasic) continue;
      if (j < n_) {
        structurals.push_back(j);
        continue;
      }
      const int i = row_of_unit(j);
      if (owner[i] >= 0) {
        dependent.push_back(j);
        continue;
      }
      owner[i] = j;
      if (is_artificial(j) && art_sign_[i] < 0.0) {
        etas_.open(i, -1.0);
        etas_.close();
      }
    }
    std::sort(structurals.begin(), structurals.end(), [&](int a, int b) {
      const int na = lp_.matrix_.nnz(a);
      const int nb = lp_.matrix_.nnz(b);
      return na != nb ? na < nb : a < b;
    });
    // Columns are pushed through the growing eta file with their nonzero
    // pattern tracked, so each step costs its fill rather than m.
    std::fill(work_.begin(), work_.end(), 0.0);
    mark_.assign(m_, 0);
    std::vector<int> nz;
    auto touch = [&](int i) {
      if (!mark_[i]) {
        mark_[i] = 1;
        nz.push_back(i);
      }
    };
    const auto& a = lp_.matrix_;
    for (int j : structurals) {
      nz.clear();
      for (int p = a.start[j]; p < a.start[j + 1]; ++p) {
        work_[a.index[p]] += a.value[p];
        touch(a.index[p]);
      }
      for (int e = 0; e < etas_.size(); ++e) {
        double wr = work_[etas_.row[e]];
        if (wr == 0.0) continue;
        wr /= etas_.pivot[e];
        work_[etas_.row[e]] = wr;
        for (int p = etas_.start[e]; p < etas_.start[e + 1]; ++p) {
          work_[etas_.index[p]] -= etas_.value[p] * wr;
          touch(etas_.index[p]);
        }
      }
      std::sort(nz.begin(), nz.end());
      double biggest = 0.0;
      for (int i : nz) biggest = std::max(biggest, std::abs(work_[i]));
      int best = -1;
      double best_abs = 0.0;
      for (int i : nz) {
        if (owner[i] >= 0) continue;
        const double v = std::abs(work_[i]);
        if (v > best_abs) {
          best_abs = v;
          best = i;
        }
      }
      if (best < 0 || best_abs < 1e-11 || best_abs < 1e-9 * biggest) {
        dependent.push_back(j);
      } else {
        etas_.open(best, work_[best]);
        for (int i : nz) {
          if (i != best && std::abs(work_[i]) > kDropTol) {
            etas_.index.push_back(i);
            etas_.value.push_back(work_[i]);
          }
        }
        etas_.close();
        owner[best] = j;
      }
      for (int i : nz) {
        work_[i] = 0.0;
        mark_[i] = 0;
      }
    }
    for (int j : dependent) make_nonbasic_near(j);
    for (int i = 0; i < m_; ++i) {
      if (owner[i] < 0) {
        owner[i] = n_ + i;
        status_[n_ + i] = VarStatus::kBasic;
      }
    }
    head_ = owner;
  }

  // ---- state helpers -----------------------------------------------------

  void make_nonbasic_near(int j) {
    const double v = x_[j];
    const bool lo_fin = std::isfinite(lo_[j]);
    const bool up_fin = std::isfinite(up_[j]);
    if (lo_[j] == up_[j]) {
      status_[j] = VarStatus::kFixed;
      x_[j] = lo_[j];
    } else if (lo_fin && (!up_fin || std::abs(v - lo_[j]) <= std::abs(v - up_[j]))) {
      status_[j] = VarStatus::kAtLower;
      x_[j] = lo_[j];
    } else if (up_fin) {
      status_[j] = VarStatus::kAtUpper;
      x_[j] = up_[j];
    } else {
      status_[j] = VarStatus::kFree;
      x_[j] = 0.0;
    }
  }

  // Re-derives nonbasic values from their status and the current bounds.
  void normalize_nonbasic(int j) {
    if (status_[j] == VarStatus::kBasic) return;
    if (lo_[j] == up_[j]) {
      status_[j] = VarStatus::kFixed;
      x_[j] = lo_[j];
      return;
    }
    const bool lo_fin = std::isfinite(lo_[j]);
    const bool up_fin = std::isfinite(up_[j]);
    switch (status_[j]) {
      case VarStatus::kAtUpper:
        if (up_fin) {
          x_[j] = up_[j];
          return;
        }
        break;
      case VarStatus::kAtLower:
        if (lo_fin) {
          x_[j] = lo_[j];
          return;
        }
        break;
      case VarStatus::kFree:
        if (!lo_fin && !up_fin) {
          x_[j] = 0.0;
          return;
        }
        break;
      default:
        break;
    }
    x_[j] = 0.0;
    make_nonbasic_near(j);
  }

  void recompute_basics() {
    std::copy(lp_.rhs_.begin(), lp_.rhs_.end(), work_.begin());
    for (int j = 0; j < total_; ++j) {
      if (status_[j] != VarStatus::kBasic && x_[j] != 0.0) {
        scatter_column(j, -x_[j], work_);
      }
    }
    ftran(work_);
    for (int i = 0; i < m_; ++i) x_[head_[i]] = work_[i];
  }

  void compute_duals() {
    for (int i = 0; i < m_; ++i) work2_[i] = cost_[head_[i]];
    btran(work2_);
    if (n_ > 0) {
      opt_.dispatch.reduced_costs(
          lp_.matrix_, work2_, std::span<const double>(cost_.data(), n_),
          std::span<double>(d_.data(), n_));
    }
    for (int i = 0; i < m_; ++i) {
      d_[n_ + i] = cost_[n_ + i] - work2_[i];
      d_[n_ + m_ + i] = cost_[n_ + m_ + i] - art_sign_[i] * work2_[i];
    }
    for (int i = 0; i < m_; ++i) d_[head_[i]] = 0.0;
  }

  void build_mask() {
    for (int j = 0; j < total_; ++j) {
      switch (status_[j]) {
        case VarStatus::kAtLower:
          mask_[j] = kernels::kMayIncrease;
          break;
        case VarStatus::kAtUpper:
          mask_[j] = kernels::kMayDecrease;
          break;
        case VarStatus::kFree:
          mask_[j] = kernels::kMayIncrease | kernels::kMayDecrease;
          break;
        default:
          mask_[j] = kernels::kNone;
      }
    }
  }

  void set_phase2_costs() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    std::copy(lp_.cost_.begin(), lp_.cost_.end(), cost_.begin());
  }

  double max_basic_violation(int* row = nullptr) {
    for (int i = 0; i < m_; ++i) {
      const int j = head_[i];
      bx_[i] = x_[j];
      blo_[i] = lo_[j];
      bup_[i] = up_[j];
    }
    const kernels::Pick pick =
        opt_.dispatch.max_violation(bx_, blo_, bup_, kBoundTol);
    if (row != nullptr) *row = pick.index;
    return pick.index < 0 ? 0.0 : pick.score;
  }

  bool dual_feasible() {
    build_mask();
    return opt_.dispatch.dantzig_pick(d_, mask_, opt_.optimality_tol).index < 0;
  }

  void pivot(int r, int q, const std::vector<double>& alpha) {
    push_eta(r, alpha);
    head_[r] = q;
    status_[q] = VarStatus::kBasic;
    ++updates_;
  }

  void set_leaving_status(int j, bool to_lower) {
    if (lo_[j] == up_[j]) {
      status_[j] = VarStatus::kFixed;
      x_[j] = lo_[j];
    } else if (to_lower) {
      status_[j] = VarStatus::kAtLower;
      x_[j] = lo_[j];
    } else {
      status_[j] = VarStatus::kAtUpper;
      x_[j] = up_[j];
    }
  }

  // ---- start procedures --------------------------------------------------

  void cold_start() {
    etas_.clear();
    updates_ = 0;
    for (int i = 0; i < m_; ++i) {
      lo_[n_ + m_ + i] = 0.0;
      up_[n_ + m_ + i] = kInfinity;
    }
    for (int j = 0; j < n_; ++j) {
      status_[j] = VarStatus::kAtLower;
      x_[j] = 0.0;
      make_nonbasic_near(j);
      if (status_[j] == VarStatus::kAtLower || status_[j] == VarStatus::kAtUpper ||
          status_[j] == VarStatus::kFixed) {
        // make_nonbasic_near picked the bound nearest zero.
      }
    }
    std::copy(lp_.rhs_.begin(), lp_.rhs_.end(), work_.begin());
    for (int j = 0; j < n_; ++j) {
      if (x_[j] != 0.0) scatter_column(j, -x_[j], work_);
    }
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      const int a = n_ + m_ + i;
      const double r = work_[i];
      if (r >= lo_[s] - kBoundTol && r <= up_[s] + kBoundTol) {
        status_[s] = VarStatus::kBasic;
        x_[s] = r;
        head_[i] = s;
        status_[a] = VarStatus::kAtLower;
        x_[a] = 0.0;
        art_sign_[i] = 1.0;
      } else {
        const double bound = r < lo_[s] ? lo_[s] : up_[s];
        status_[s] = lo_[s] == up_[s] ? VarStatus::kFixed
                     : r < lo_[s]     ? VarStatus::kAtLower
                                      : VarStatus::kAtUpper;
        x_[s] = bound;
        const double resid = r - bound;
        art_sign_[i] = resid >= 0.0 ? 1.0 : -1.0;
        status_[a] = VarStatus::kBasic;
        x_[a] = std::abs(resid);
        head_[i] = a;
      }
    }
    refactor();
    recompute_basics();
  }

  bool warm_start(const LpBasis& basis) {
    if (static_cast<int>(basis.status.size()) != total_ ||
        static_cast<int>(basis.head.size()) != m_) {
      return false;
    }
    status_ = basis.status;
    head_ = basis.head;
    // Artificials are fixed at zero outside phase 1.
    for (int i = 0; i < m_; ++i) {
      lo_[n_ + m_ + i] = 0.0;
      up_[n_ + m_ + i] = 0.0;
    }
    std::fill(x_.begin(), x_.end(), 0.0);
    for (int j = 0; j < total_; ++j) normalize_nonbasic(j);
    if (basis.factor && basis.factor->head == basis.head) {
      etas_ = *basis.factor;
      updates_ = 0;
    } else {
      refactor();
    }
    for (int j = 0; j < total_; ++j) normalize_nonbasic(j);
    recompute_basics();
    return true;
  }

  // Dual simplex when the basis is dual feasible (after bound flips),
  // primal simplex when it is primal feasible, failure otherwise.
  LpStatus reoptimize() {
    set_phase2_costs();
    compute_duals();
    bool flipped = false;
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::kAtLower && d_[j] < -opt_.optimality_tol &&
          std::isfinite(up_[j])) {
        status_[j] = VarStatus::kAtUpper;
        x_[j] = up_[j];
        flipped = true;
      } else if (status_[j] == VarStatus::kAtUpper &&
                 d_[j] > opt_.optimality_tol && std::isfinite(lo_[j])) {
        status_[j] = VarStatus::kAtLower;
        x_[j] = lo_[j];
        flipped = true;
      }
    }
    if (flipped) recompute_basics();
    if (dual_feasible()) {
      const LpStatus st = dual_simplex();
      if (st != LpStatus::kOptimal) return st;
      return polish();
    }
    if (max_basic_violation() == 0.0) {
      const LpStatus st = primal_simplex();
      if (st != LpStatus::kOptimal) return st;
      return polish();
    }
    return LpStatus::kIterationLimit;
  }

  LpStatus two_phase() {
    // Phase 1: minimise the sum of artificials.
    std::fill(cost_.begin(), cost_.end(), 0.0);
    bool any_artificial = false;
    for (int i = 0; i < m_; ++i) {
      if (status_[n_ + m_ + i] == VarStatus::kBasic) {
        any_artificial = true;
      }
      cost_[n_ + m_ + i] = 1.0;
    }
    if (any_artificial) {
      const LpStatus st = primal_simplex();
      if (st == LpStatus::kIterationLimit) return st;
      double infeas = 0.0;
      for (int i = 0; i < m_; ++i) infeas += x_[n_ + m_ + i];
      if (infeas > opt_.feasibility_tol) return LpStatus::kInfeasible;
    }
    for (int i = 0; i < m_; ++i) {
      const int a = n_ + m_ + i;
      lo_[a] = 0.0;
      up_[a] = 0.0;
      if (status_[a] != VarStatus::kBasic) {
        status_[a] = VarStatus::kFixed;
        x_[a] = 0.0;
      }
    }
    set_phase2_costs();
    const LpStatus st = primal_simplex();
    if (st != LpStatus::kOptimal) return st;
    return polish();
  }

  // Refactors, recomputes primal and dual values from scratch and repairs
  // any drift with a few extra simplex passes.
  LpStatus polish() {
    for (int round = 0; round < 4; ++round) {
      if (updates_ > 0) refactor();
      for (int j = 0; j < total_; ++j) normalize_nonbasic(j);
      recompute_basics();
      compute_duals();
      const bool primal_ok = max_basic_violation() == 0.0;
      const bool dual_ok = dual_feasible();
      if (primal_ok && dual_ok) return LpStatus::kOptimal;
      LpStatus st;
      if (dual_ok) {
        st = dual_simplex();
      } else if (primal_ok) {
        st = primal_simplex();
      } else {
        return LpStatus::kIterationLimit;
      }
      if (st != LpStatus::kOptimal) return st;
    }
    return LpStatus::kIterationLimit;
  }

  // ---- primal simplex ----------------------------------------------------

  LpStatus primal_simplex() {
    long stalled = 0;
    bool bland = false;
    const long bland_after = 3L * (m_ + n_);
    std::vector<double>& alpha = work_;
    while (true) {
      if (iterations_ >= opt_.max_iterations) return LpStatus::kIterationLimit;
      if (updates_ >= opt_.refactor_period) {
        refactor();
        recompute_basics();
      }
      compute_duals();
      build_mask();
      const kernels::Pick pick =
          bland ? opt_.dispatch.bland_pick(d_, mask_, opt_.optimality_tol)
                : opt_.dispatch.dantzig_pick(d_, mask_, opt_.optimality_tol);
      if (pick.index < 0) return LpStatus::kOptimal;
      const int q = pick.index;
      const double dir = d_[q] < 0.0 ? 1.0 : -1.0;
      load_column(q, alpha);
      ftran(alpha);
      ++iterations_;

      const double flip = (std::isfinite(lo_[q]) && std::isfinite(up_[q]))
                              ? up_[q] - lo_[q]
                              : kInfinity;
      int r = -1;
      double step = kInfinity;
      bool r_to_lower = false;
      if (bland) {
        for (int i = 0; i < m_; ++i) {
          const double delta = -dir * alpha[i];
          if (std::abs(alpha[i]) <= opt_.pivot_tol) continue;
          const int j = head_[i];
          double t;
          if (delta < 0.0 && std::isfinite(lo_[j])) {
            t = std::max(0.0, (x_[j] - lo_[j]) / -delta);
          } else if (delta > 0.0 && std::isfinite(up_[j])) {
            t = std::max(0.0, (up_[j] - x_[j]) / delta);
          } else {
            continue;
          }
          if (t < step || (t == step && r >= 0 && j < head_[r])) {
            step = t;
            r = i;
            r_to_lower = delta < 0.0;
          }
        }
      } else {
        double bound = kInfinity;
        for (int i = 0; i < m_; ++i) {
          if (std::abs(alpha[i]) <= opt_.pivot_tol) continue;
          const double delta = -dir * alpha[i];
          const int j = head_[i];
          if (delta < 0.0 && std::isfinite(lo_[j])) {
            bound = std::min(bound, (x_[j] - lo_[j] + kBoundTol) / -delta);
          } else if (delta > 0.0 && std::isfinite(up_[j])) {
            bound = std::min(bound, (up_[j] - x_[j] + kBoundTol) / delta);
          }
        }
        double best_alpha = 0.0;
        for (int i = 0; i < m_; ++i) {
          if (std::abs(alpha[i]) <= opt_.pivot_tol) continue;
          const double delta = -dir * alpha[i];
          const int j = head_[i];
          double t;
          if (delta < 0.0 && std::isfinite(lo_[j])) {
            t = (x_[j] - lo_[j]) / -delta;
          } else if (delta > 0.0 && std::isfinite(up_[j])) {
            t = (up_[j] - x_[j]) / delta;
          } else {
            continue;
          }
          if (t <= bound && std::abs(alpha[i]) > best_alpha) {
            best_alpha = std::abs(alpha[i]);
            r = i;
            step = std::max(0.0, t);
            r_to_lower = delta < 0.0;
          }
        }
      }

      if (r < 0 && !std::isfinite(flip)) return LpStatus::kUnbounded;

      if (r < 0 || flip <= step) {
        // Entering variable runs to its opposite bound; basis unchanged.
        for (int i = 0; i < m_; ++i) x_[head_[i]] -= dir * alpha[i] * flip;
        if (dir > 0.0) {
          status_[q] = VarStatus::kAtUpper;
          x_[q] = up_[q];
        } else {
          status_[q] = VarStatus::kAtLower;
          x_[q] = lo_[q];
        }
        stalled = 0;
        continue;
      }

      for (int i = 0; i < m_; ++i) x_[head_[i]] -= dir * alpha[i] * step;
      x_[q] += dir * step;
      const int leaving = head_[r];
      set_leaving_status(leaving, r_to_lower);
      pivot(r, q, alpha);

      if (step * std::abs(d_[q]) <= 1e-12) {
        if (++stalled > bland_after) bland = true;
      } else {
        stalled = 0;
      }
    }
  }

  // ---- dual simplex ------------------------------------------------------

  LpStatus dual_simplex() {
    long stalled = 0;
    bool bland = false;
    const long bland_after = 3L * (m_ + n_);
    std::vector<double>& rho = work2_;
    std::vector<double> alpha_row(total_, 0.0);
    std::vector<double> alpha_col(m_, 0.0);
    while (true) {
      if (iterations_ >= opt_.max_iterations) return LpStatus::kIterationLimit;
      if (probe_limit_ > 0 && iterations_ >= probe_limit_) {
        probe_stopped_ = true;
        return LpStatus::kIterationLimit;
      }
      if (updates_ >= opt_.refactor_period) {
        refactor();
        for (int j = 0; j < total_; ++j) normalize_nonbasic(j);
        recompute_basics();
        compute_duals();
      }
      int r = -1;
      if (bland) {
        int best_var = total_;
        for (int i = 0; i < m_; ++i) {
          const int j = head_[i];
          if ((x_[j] < lo_[j] - kBoundTol || x_[j] > up_[j] + kBoundTol) &&
              j < best_var) {
            best_var = j;
            r = i;
          }
        }
      } else {
        max_basic_violation(&r);
      }
      if (r < 0) return LpStatus::kOptimal;
      ++iterations_;

      const int leaving = head_[r];
      const bool to_lower = x_[leaving] < lo_[leaving];

      std::fill(rho.begin(), rho.end(), 0.0);
      rho[r] = 1.0;
      btran(rho);
      if (n_ > 0) {
        opt_.dispatch.row_times_columns(lp_.matrix_, rho,
                                        std::span<double>(alpha_row.data(), n_));
      }
      for (int i = 0; i < m_; ++i) {
        alpha_row[n_ + i] = rho[i];
        alpha_row[n_ + m_ + i] = art_sign_[i] * rho[i];
      }

      // Candidates j keep dual feasibility up to a step t_j = |d_j|/|alpha|.
      auto eligible = [&](int j, double a) {
        if (std::abs(a) <= opt_.pivot_tol) return false;
        switch (status_[j]) {
          case VarStatus::kAtLower:
            return to_lower ? a < 0.0 : a > 0.0;
          case VarStatus::kAtUpper:
            return to_lower ? a > 0.0 : a < 0.0;
          case VarStatus::kFree:
            return true;
          default:
            return false;
        }
      };
      int q = -1;
      if (bland) {
        double best_t = kInfinity;
        for (int j = 0; j < total_; ++j) {
          const double a = alpha_row[j];
          if (!eligible(j, a)) continue;
          const double t = std::max(0.0, std::abs(d_[j])) / std::abs(a);
          if (t < best_t) {
            best_t = t;
            q = j;
          }
        }
      } else {
        double bound = kInfinity;
        for (int j = 0; j < total_; ++j) {
          const double a = alpha_row[j];
          if (!eligible(j, a)) continue;
          const double dj = status_[j] == VarStatus::kAtUpper ? -d_[j] : d_[j];
          const double slack =
              status_[j] == VarStatus::kFree ? std::abs(d_[j]) : dj;
          bound = std::min(bound, (std::max(slack, 0.0) + opt_.optimality_tol) /
                                      std::abs(a));
        }
        double best_alpha = 0.0;
        for (int j = 0; j < total_; ++j) {
          const double a = alpha_row[j];
          if (!eligible(j, a)) continue;
          const double dj = status_[j] == VarStatus::kAtUpper ? -d_[j] : d_[j];
          const double slack =
              status_[j] == VarStatus::kFree ? std::abs(d_[j]) : dj;
          const double t = std::max(slack, 0.0) / std::abs(a);
          if (t <= bound && std::abs(a) > best_alpha) {
            best_alpha = std::abs(a);
            q = j;
          }
        }
      }
      if (q < 0) return LpStatus::kInfeasible;

      const double arq = alpha_row[q];
      double theta = d_[q] / arq;
      // Guard the sign so that rounding never makes the leaving reduced
      // cost dual infeasible.
      if (to_lower ? theta > 0.0 : theta < 0.0) theta = 0.0;
      for (int j = 0; j < total_; ++j) {
        if (status_[j] == VarStatus::kBasic || status_[j] == VarStatus::kFixed) {
          continue;
        }
        if (alpha_row[j] != 0.0) d_[j] -= theta * alpha_row[j];
      }

      load_column(q, alpha_col);
      ftran(alpha_col);
      const double target = to_lower ? lo_[leaving] : up_[leaving];
      const double piv = alpha_col[r];
      if (std::abs(piv) <= opt_.pivot_tol) {
        // Row and column disagree numerically; rebuild and retry.
        refactor();
        for (int j = 0; j < total_; ++j) normalize_nonbasic(j);
        recompute_basics();
        compute_duals();
        if (++numerical_retries_ > 20) return LpStatus::kIterationLimit;
        continue;
      }
      const double delta = (x_[leaving] - target) / piv;
      for (int i = 0; i < m_; ++i) x_[head_[i]] -= delta * alpha_col[i];
      x_[q] += delta;
      set_leaving_status(leaving, to_lower);
      d_[leaving] = -theta;
      d_[q] = 0.0;
      pivot(r, q, alpha_col);

      if (std::abs(theta) <= 1e-12) {
        if (++stalled > bland_after) bland = true;
      } else {
        stalled = 0;
      }
    }
  }

  std::vector<double> original_values() const {
    std::vector<double> out(lp_.column_of_.size());
    for (std::size_t v = 0; v < out.size(); ++v) {
      const int col = lp_.column_of_[v];
      if (col < 0) {
        out[v] = lp_.fixed_value_[v];
      } else {
        out[v] = std::clamp(x_[col], lo_[col], up_[col]);
      }
    }
    return out;
  }

  static constexpr double kBoundTol = 1e-9;

  const LpRelaxation& lp_;
  const SimplexOptions& opt_;
  int m_;
  int n_;
  int total_;
  std::vector<double> lo_, up_, x_, cost_, d_;
  std::vector<unsigned char> mask_;
  std::vector<VarStatus> status_;
  std::vector<int> head_;
  std::vector<double> art_sign_;
  std::vector<double> work_, work2_;
  std::vector<double> bx_ = std::vector<double>(m_);
  std::vector<double> blo_ = std::vector<double>(m_);
  std::vector<double> bup_ = std::vector<double>(m_);
  EtaFile etas_;
  std::vector<unsigned char> mark_;
  int updates_ = 0;
  long probe_limit_ = 0;
  bool probe_stopped_ = false;
  long iterations_ = 0;
  long iterations_warm_ = 0;
  int numerical_retries_ = 0;
};

LpSolution LpRelaxation::solve(const LpBasis* warm_start) const {
  SimplexEngine engine(*this);
  return engine.run(warm_start);
}

LpSolution LpRelaxation::probe(const LpBasis& warm_start,
                               long iteration_limit) const {
  SimplexEngine engine(*this);
  return engine.probe(warm_start, iteration_limit);
}

LpSolution solve_lp(const MilpProblem& problem, const SimplexOptions& options) {
  return LpRelaxation(problem, options).solve();
}

}  // namespace decarb
