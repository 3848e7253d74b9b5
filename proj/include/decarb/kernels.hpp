#pragma once

#include <span>
#include <vector>

namespace decarb::kernels {

// Compressed sparse column storage.
struct SparseColumns {
  int rows = 0;
  int cols = 0;
  std::vector<int> start;  // size cols + 1
  std::vector<int> index;
  std::vector<double> value;

  int nnz(int col) const { return start[col + 1] - start[col]; }
};

// Index/value pair produced by the selection kernels. `index` is -1 when no
// entry qualified.
struct Pick {
  int index = -1;
  double score = 0.0;
};

// Candidate filter for entering-variable pricing: each nonbasic column has a
// direction mask telling which reduced-cost signs make it attractive.
enum DirectionMask : unsigned char {
  kNone = 0,
  kMayIncrease = 1,  // attractive when reduced cost < -tol
  kMayDecrease = 2,  // attractive when reduced cost > tol
};

// Every kernel exists in a serial reference form and an OpenMP form. Each
// output element is produced by the same sequential arithmetic in both, and
// reductions compare (score, index) pairs under a total order, so results are
// bitwise identical for any thread count.
namespace serial {

// out[j] = cost[j] - dot(y, A[:, j]) for every column j.
void reduced_costs(const SparseColumns& a, std::span<const double> y,
                   std::span<const double> cost, std::span<double> out);

// out[j] = dot(rho, A[:, j]) for every column j.
void row_times_columns(const SparseColumns& a, std::span<const double> rho,
                       std::span<double> out);

// Column j with largest |d[j]| among columns whose mask allows the sign of
// d[j] beyond tol; ties go to the lowest index.
Pick dantzig_pick(std::span<const double> d,
                  std::span<const unsigned char> mask, double tol);

// Lowest-index qualifying column (Bland's rule), same filter as above.
Pick bland_pick(std::span<const double> d, std::span<const unsigned char> mask,
                double tol);

// Largest bound violation of x[i] against [lower[i], upper[i]] beyond tol;
// ties go to the lowest index.
Pick max_violation(std::span<const double> x, std::span<const double> lower,
                   std::span<const double> upper, double tol);

}  // namespace serial

namespace parallel {

void reduced_costs(const SparseColumns& a, std::span<const double> y,
                   std::span<const double> cost, std::span<double> out);
void row_times_columns(const SparseColumns& a, std::span<const double> rho,
                       std::span<double> out);
Pick dantzig_pick(std::span<const double> d,
                  std::span<const unsigned char> mask, double tol);
Pick bland_pick(std::span<const double> d, std::span<const unsigned char> mask,
                double tol);
Pick max_violation(std::span<const double> x, std::span<const double> lower,
                   std::span<const double> upper, double tol);

}  // namespace parallel

enum class Execution { kSerial, kParallel };

// Dispatches to the parallel kernels only when the work is large enough to
// amortise thread start-up; below `parallel_threshold` elements the serial
// form runs regardless of `exec`.
struct Dispatch {
  Execution exec = Execution::kSerial;
  int parallel_threshold = 20000;

  bool use_parallel(long work) const {
    return exec == Execution::kParallel && work >= parallel_threshold;
  }

  void reduced_costs(const SparseColumns& a, std::span<const double> y,
                     std::span<const double> cost, std::span<double> out) const;
  void row_times_columns(const SparseColumns& a, std::span<const double> rho,
                         std::span<double> out) const;
  Pick dantzig_pick(std::span<const double> d,
                    std::span<const unsigned char> mask, double tol) const;
  Pick bland_pick(std::span<const double> d,
                  std::span<const unsigned char> mask, double tol) const;
  Pick max_violation(std::span<const double> x, std::span<const double> lower,
                     std::span<const double> upper, double tol) const;
};

// Number of OpenMP threads available (1 when built without OpenMP).
int max_threads();

}  // namespace decarb::kernels
