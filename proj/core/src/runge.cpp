#include "dualtaylor/runge.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dualtaylor/errors.hpp"

namespace dualtaylor {

namespace {

double sup_error(const CenteredPolynomial& p,
                 const std::vector<ComplexScalar>& pts,
                 const std::vector<ComplexScalar>& target_values) {
  double e = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    e = std::max(e, std::abs(target_values[i] - p.evaluate(pts[i])));
  }
  return e;
}

}  // namespace

JointApproximation joint_approximate(const TargetFunction& g,
                                     const SampledSet& l_set,
                                     const TargetFunction& f1,
                                     const SampledSet& k1_set,
                                     const Tolerances& tol, int max_degree,
                                     ComplexScalar center,
                                     const SolverOptions& options) {
  if (max_degree < 1) {
    throw ValidationError("joint_approximate.max_degree: must be >= 1");
  }
  const double bound_l = tol.epsilon / 2;
  const double bound_k1 = 1.0 / (2.0 * static_cast<double>(tol.s));

  const std::vector<ComplexScalar> g_values = g.evaluate(l_set.points);
  const std::vector<ComplexScalar> f1_values = f1.evaluate(k1_set.points);

  SolverOptions solve_options = options;
  solve_options.basis = BasisMode::kArnoldi;
  solve_options.cage = true;
  solve_options.target_objective = std::min(bound_l, bound_k1);

  JointApproximation out;

  SampledSet l_solve = l_set;
  SampledSet k1_solve = k1_set;
  std::vector<ComplexScalar> g_solve = g_values;
  std::vector<ComplexScalar> f1_solve = f1_values;
  int refine = 1;

  std::vector<int> schedule;
  for (int n = 8; n <= max_degree; n *= 2) schedule.push_back(n);
  if (schedule.empty()) schedule.push_back(max_degree);

  for (int n : schedule) {
    // Keep the solve overdetermined; acceptance is still measured on the
    // given grids.
    while (l_solve.points.size() + k1_solve.points.size() <
           static_cast<std::size_t>(n) + 2) {
      refine *= 2;
      if (g.is_table() || f1.is_table()) {
        throw ValidationError(
            "joint_approximate: degree " + std::to_string(n) +
            " needs refined grids, but table targets bind to the given "
            "grid");
      }
      l_solve = sample(l_set.spec, l_set.density * refine);
      k1_solve = sample(k1_set.spec, k1_set.density * refine);
      g_solve = g.evaluate(l_solve.points);
      f1_solve = f1.evaluate(k1_solve.points);
    }

    FitTask task;
    task.center = center;
    task.window = DegreeWindow(0, n);
    task.grids.push_back({l_solve, g_solve});
    task.grids.push_back({k1_solve, f1_solve});
    const ApproximationResult fit = solve_window(task, solve_options);

    const double e_l = sup_error(fit.polynomial, l_set.points, g_values);
    const double e_k1 = sup_error(fit.polynomial, k1_set.points, f1_values);
    out.trace.push_back({n, e_l, e_k1});

    if (e_l < bound_l && e_k1 < bound_k1) {
      out.polynomial = fit.polynomial;
      out.error_l = e_l;
      out.error_k1 = e_k1;
      out.schedule_degree = n;
      return out;
    }
  }

  double best_l = out.trace.front().error_l;
  double best_k1 = out.trace.front().error_k1;
  for (const auto& step : out.trace) {
    best_l = std::min(best_l, step.error_l);
    best_k1 = std::min(best_k1, step.error_k1);
  }
  throw ApproximationFailure(
      "joint_approximate: degree cap " + std::to_string(max_degree) +
          " exhausted (best errors " + format_double(best_l) + " on L vs " +
          format_double(bound_l) + ", " + format_double(best_k1) +
          " on K1 vs " + format_double(bound_k1) +
          "); the geometry needs a larger cap",
      {best_l, best_k1});
}

}  // namespace dualtaylor
