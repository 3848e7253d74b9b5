// Serial reference kernels against their OpenMP forms, plus whole LP solves
// of the planning relaxation under each dispatch mode.

#include <benchmark/benchmark.h>

#include <random>

#include "decarb/kernels.hpp"
#include "decarb/model_builder.hpp"
#include "decarb/simplex.hpp"
#include "decarb/workbook.hpp"

using namespace decarb;
using namespace decarb::kernels;

namespace {

struct Data {
  SparseColumns a;
  std::vector<double> y;
  std::vector<double> cost;
  std::vector<double> out;
  std::vector<unsigned char> mask;
  std::vector<double> lower;
  std::vector<double> upper;
};

Data make_data(int cols) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> val(-5.0, 5.0);
  std::uniform_int_distribution<int> row(0, 999);
  std::uniform_int_distribution<int> m(0, 3);
  Data d;
  d.a.rows = 1000;
  d.a.cols = cols;
  d.a.start.push_back(0);
  for (int j = 0; j < cols; ++j) {
    for (int e = 0; e < 8; ++e) {
      d.a.index.push_back(row(rng));
      d.a.value.push_back(val(rng));
    }
    d.a.start.push_back(static_cast<int>(d.a.index.size()));
  }
  d.y.resize(1000);
  for (double& v : d.y) v = val(rng);
  d.cost.resize(cols);
  for (double& v : d.cost) v = val(rng);
  d.out.resize(cols);
  d.mask.resize(cols);
  for (auto& v : d.mask) v = static_cast<unsigned char>(m(rng));
  d.lower.assign(cols, -1.0);
  d.upper.assign(cols, 1.0);
  return d;
}

template <bool Parallel>
void BM_ReducedCosts(benchmark::State& state) {
  Data d = make_data(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel) {
      parallel::reduced_costs(d.a, d.y, d.cost, d.out);
    } else {
      serial::reduced_costs(d.a, d.y, d.cost, d.out);
    }
    benchmark::DoNotOptimize(d.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_DantzigPick(benchmark::State& state) {
  Data d = make_data(static_cast<int>(state.range(0)));
  serial::reduced_costs(d.a, d.y, d.cost, d.out);
  for (auto _ : state) {
    const Pick p = Parallel ? parallel::dantzig_pick(d.out, d.mask, 1e-9)
                            : serial::dantzig_pick(d.out, d.mask, 1e-9);
    benchmark::DoNotOptimize(p);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_MaxViolation(benchmark::State& state) {
  Data d = make_data(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const Pick p = Parallel ? parallel::max_violation(d.cost, d.lower, d.upper, 1e-9)
                            : serial::max_violation(d.cost, d.lower, d.upper, 1e-9);
    benchmark::DoNotOptimize(p);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Execution Exec>
void BM_PlanningRelaxation(benchmark::State& state) {
  Instance inst = to_instance(read_workbook(DECARB_DATA_DIR "/scenario2"));
  inst.aff = 0.2;
  const PlanningModel model = build_model(inst, Objective::kMinBudget);
  SimplexOptions opts;
  opts.dispatch.exec = Exec;
  opts.dispatch.parallel_threshold = 0;
  for (auto _ : state) {
    const LpSolution s = solve_lp(model.problem, opts);
    benchmark::DoNotOptimize(s.objective);
  }
}

}  // namespace

BENCHMARK(BM_ReducedCosts<false>)->Name("reduced_costs/serial")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_ReducedCosts<true>)->Name("reduced_costs/parallel")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_DantzigPick<false>)->Name("dantzig_pick/serial")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_DantzigPick<true>)->Name("dantzig_pick/parallel")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_MaxViolation<false>)->Name("max_violation/serial")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_MaxViolation<true>)->Name("max_violation/parallel")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_PlanningRelaxation<Execution::kSerial>)
    ->Name("planning_lp/serial")
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PlanningRelaxation<Execution::kParallel>)
    ->Name("planning_lp/parallel")
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
