#include "decarb/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace decarb::kernels {

namespace {

inline double column_dot(const SparseColumns& a, int j,
                         std::span<const double> y) {
  double sum = 0.0;
  for (int p = a.start[j]; p < a.start[j + 1]; ++p) {
    sum += a.value[p] * y[a.index[p]];
  }
  return sum;
}

// Total order on picks: larger score first, then lower index.
inline bool better(const Pick& a, const Pick& b) {
  if (a.index < 0) return false;
  if (b.index < 0) return true;
  if (a.score != b.score) return a.score > b.score;
  return a.index < b.index;
}

inline bool qualifies(double d, unsigned char mask, double tol) {
  return ((mask & kMayIncrease) && d < -tol) ||
         ((mask & kMayDecrease) && d > tol);
}

inline double violation(double x, double lo, double up) {
  if (x < lo) return lo - x;
  if (x > up) return x - up;
  return 0.0;
}

}  // namespace

namespace serial {

void reduced_costs(const SparseColumns& a, std::span<const double> y,
                   std::span<const double> cost, std::span<double> out) {
  for (int j = 0; j < a.cols; ++j) out[j] = cost[j] - column_dot(a, j, y);
}

void row_times_columns(const SparseColumns& a, std::span<const double> rho,
                       std::span<double> out) {
  for (int j = 0; j < a.cols; ++j) out[j] = column_dot(a, j, rho);
}

Pick dantzig_pick(std::span<const double> d,
                  std::span<const unsigned char> mask, double tol) {
  Pick best;
  for (int j = 0; j < static_cast<int>(d.size()); ++j) {
    if (!qualifies(d[j], mask[j], tol)) continue;
    const Pick cand{j, std::abs(d[j])};
    if (better(cand, best)) best = cand;
  }
  return best;
}

Pick bland_pick(std::span<const double> d, std::span<const unsigned char> mask,
                double tol) {
  for (int j = 0; j < static_cast<int>(d.size()); ++j) {
    if (qualifies(d[j], mask[j], tol)) return {j, std::abs(d[j])};
  }
  return {};
}

Pick max_violation(std::span<const double> x, std::span<const double> lower,
                   std::span<const double> upper, double tol) {
  Pick best;
  for (int i = 0; i < static_cast<int>(x.size()); ++i) {
    const double v = violation(x[i], lower[i], upper[i]);
    if (v <= tol) continue;
    const Pick cand{i, v};
    if (better(cand, best)) best = cand;
  }
  return best;
}

}  // namespace serial

namespace parallel {

void reduced_costs(const SparseColumns& a, std::span<const double> y,
                   std::span<const double> cost, std::span<double> out) {
  const int n = a.cols;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) out[j] = cost[j] - column_dot(a, j, y);
}

void row_times_columns(const SparseColumns& a, std::span<const double> rho,
                       std::span<double> out) {
  const int n = a.cols;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) out[j] = column_dot(a, j, rho);
}

Pick dantzig_pick(std::span<const double> d,
                  std::span<const unsigned char> mask, double tol) {
  const int n = static_cast<int>(d.size());
  Pick best;
#pragma omp parallel
  {
    Pick local;
#pragma omp for schedule(static) nowait
    for (int j = 0; j < n; ++j) {
      if (!qualifies(d[j], mask[j], tol)) continue;
      const Pick cand{j, std::abs(d[j])};
      if (better(cand, local)) local = cand;
    }
#pragma omp critical(decarb_dantzig_pick)
    if (better(local, best)) best = local;
  }
  return best;
}

Pick bland_pick(std::span<const double> d, std::span<const unsigned char> mask,
                double tol) {
  const int n = static_cast<int>(d.size());
  int first = n;
#pragma omp parallel for schedule(static) reduction(min : first)
  for (int j = 0; j < n; ++j) {
    if (j < first && qualifies(d[j], mask[j], tol)) first = j;
  }
  if (first == n) return {};
  return {first, std::abs(d[first])};
}

Pick max_violation(std::span<const double> x, std::span<const double> lower,
                   std::span<const double> upper, double tol) {
  const int n = static_cast<int>(x.size());
  Pick best;
#pragma omp parallel
  {
    Pick local;
#pragma omp for schedule(static) nowait
    for (int i = 0; i < n; ++i) {
      const double v = violation(x[i], lower[i], upper[i]);
      if (v <= tol) continue;
      const Pick cand{i, v};
      if (better(cand, local)) local = cand;
    }
#pragma omp critical(decarb_max_violation)
    if (better(local, best)) best = local;
  }
  return best;
}

}  // namespace parallel

namespace {

long total_nnz(const SparseColumns& a) {
  return a.start.empty() ? 0 : a.start.back();
}

}  // namespace

void Dispatch::reduced_costs(const SparseColumns& a, std::span<const double> y,
                             std::span<const double> cost,
                             std::span<double> out) const {
  if (use_parallel(total_nnz(a) + a.cols)) {
    parallel::reduced_costs(a, y, cost, out);
  } else {
    serial::reduced_costs(a, y, cost, out);
  }
}

void Dispatch::row_times_columns(const SparseColumns& a,
                                 std::span<const double> rho,
                                 std::span<double> out) const {
  if (use_parallel(total_nnz(a) + a.cols)) {
    parallel::row_times_columns(a, rho, out);
  } else {
    serial::row_times_columns(a, rho, out);
  }
}

Pick Dispatch::dantzig_pick(std::span<const double> d,
                            std::span<const unsigned char> mask,
                            double tol) const {
  return use_parallel(static_cast<long>(d.size()))
             ? parallel::dantzig_pick(d, mask, tol)
             : serial::dantzig_pick(d, mask, tol);
}

Pick Dispatch::bland_pick(std::span<const double> d,
                          std::span<const unsigned char> mask,
                          double tol) const {
  return use_parallel(static_cast<long>(d.size()))
             ? parallel::bland_pick(d, mask, tol)
             : serial::bland_pick(d, mask, tol);
}

Pick Dispatch::max_violation(std::span<const double> x,
                             std::span<const double> lower,
                             std::span<const double> upper, double tol) const {
  return use_parallel(static_cast<long>(x.size()))
             ? parallel::max_violation(x, lower, upper, tol)
             : serial::max_violation(x, lower, upper, tol);
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace decarb::kernels
