#include <benchmark/benchmark.h>

#include "dualtaylor/minimax.hpp"

using namespace dualtaylor;

namespace {

FitTask circle_task(int degree) {
  FitTask task;
  task.window = DegreeWindow(0, degree - 1);
  const SampledSet grid =
      sample(SetSpec::disk({0, 0}, 1.0), 4 * degree / 6.283185307179586);
  std::vector<ComplexScalar> targets(grid.points.size());
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const ComplexScalar z = grid.points[i];
    targets[i] = 1.0 / (z - ComplexScalar{2, 0});
  }
  task.grids.push_back({grid, std::move(targets)});
  return task;
}

void BM_SolveWindow(benchmark::State& state) {
  const FitTask task = circle_task(static_cast<int>(state.range(0)));
  SolverOptions options;
  options.max_iters = 50;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_window(task, options));
  }
}
BENCHMARK(BM_SolveWindow)->Arg(8)->Arg(24)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_LpOracle(benchmark::State& state) {
  const FitTask task = circle_task(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp_oracle(task, 16));
  }
}
BENCHMARK(BM_LpOracle)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
