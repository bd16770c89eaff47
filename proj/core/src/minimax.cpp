#include "dualtaylor/minimax.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dualtaylor/errors.hpp"
#include "task_pool.hpp"

namespace dualtaylor {

namespace detail {

PooledTask pool_and_validate(const FitTask& task) {
  if (task.grids.empty()) {
    throw ValidationError("solve_window: no grids in task");
  }
  PooledTask pooled;
  pooled.grid_offsets.push_back(0);
  std::size_t total = 0;
  for (std::size_t g = 0; g < task.grids.size(); ++g) {
    const auto& entry = task.grids[g];
    if (entry.grid.points.empty()) {
      throw ValidationError("solve_window: grid " + std::to_string(g) +
                            " is empty");
    }
    if (entry.targets.size() != entry.grid.points.size()) {
      throw ValidationError(
          "solve_window: grid " + std::to_string(g) + " has " +
          std::to_string(entry.grid.points.size()) + " points but " +
          std::to_string(entry.targets.size()) + " targets");
    }
    total += entry.grid.points.size();
    pooled.grid_offsets.push_back(total);
  }
  if (static_cast<int>(total) < task.window.size()) {
    throw ValidationError(
        "solve_window: underdetermined task (" + std::to_string(total) +
        " points for a window of size " + std::to_string(task.window.size()) +
        ")");
  }
  for (std::size_t g = 0; g < task.grids.size(); ++g) {
    for (std::size_t h = g + 1; h < task.grids.size(); ++h) {
      require_disjoint(task.grids[g].grid, task.grids[h].grid,
                       "solve_window: grids " + std::to_string(g) + "/" +
                           std::to_string(h));
    }
  }
  pooled.points.reserve(total);
  pooled.targets.resize(static_cast<Eigen::Index>(total));
  Eigen::Index row = 0;
  for (const auto& entry : task.grids) {
    for (std::size_t i = 0; i < entry.grid.points.size(); ++i, ++row) {
      const ComplexScalar z = entry.grid.points[i];
      const ComplexScalar y = entry.targets[i];
      if (!is_finite(z) || !is_finite(y)) {
        throw ValidationError("solve_window: non-finite point or target");
      }
      pooled.points.push_back(z);
      pooled.targets(row) = y;
    }
  }
  double scale = 0;
  for (const auto& z : pooled.points) {
    scale = std::max(scale, std::abs(z - task.center));
  }
  pooled.scale = scale > 0 ? scale : 1.0;
  return pooled;
}

std::vector<double> per_grid_errors(const PooledTask& pooled,
                                    const Eigen::VectorXcd& residual,
                                    std::size_t num_grids) {
  std::vector<double> errors(num_grids, 0.0);
  for (std::size_t g = 0; g < num_grids; ++g) {
    for (std::size_t i = pooled.grid_offsets[g];
         i < pooled.grid_offsets[g + 1]; ++i) {
      errors[g] = std::max(errors[g],
                           std::abs(residual(static_cast<Eigen::Index>(i))));
    }
  }
  return errors;
}

CenteredPolynomial window_polynomial(const Eigen::VectorXcd& window_coeffs,
                                     const DegreeWindow& window,
                                     ComplexScalar center, double scale,
                                     bool* reliable) {
  std::vector<ComplexScalar> coeffs(
      static_cast<std::size_t>(window.high) + 1, ComplexScalar{});
  bool ok = true;
  double invpow = std::pow(scale, -window.low);
  for (int k = window.low; k <= window.high; ++k) {
    const ComplexScalar v =
        window_coeffs(static_cast<Eigen::Index>(k - window.low)) * invpow;
    if (!is_finite(v)) {
      ok = false;
      break;
    }
    coeffs[static_cast<std::size_t>(k)] = v;
    invpow /= scale;
  }
  if (!ok) {
    std::fill(coeffs.begin(), coeffs.end(), ComplexScalar{});
  }
  if (reliable) *reliable = ok;
  return CenteredPolynomial(center, std::move(coeffs));
}

}  // namespace detail

namespace {

using detail::cpow_int;
using detail::PooledTask;

constexpr double kWeightFloor = 1e-300;

struct ArnoldiBasis {
  Eigen::MatrixXcd q;  // N x K, discretely orthonormal columns
  Eigen::MatrixXcd u;  // K x K, column j = coordinates of q_j in
                       // t^(low), ..., t^(low+K-1)
};

// Builds an orthonormal basis of span{t^low..t^high} on the pooled points
// by the multiply-by-t Arnoldi recurrence, classical Gram-Schmidt with one
// reorthogonalization pass.
ArnoldiBasis build_arnoldi(const PooledTask& pooled, ComplexScalar center,
                           const DegreeWindow& window) {
  const Eigen::Index n = static_cast<Eigen::Index>(pooled.points.size());
  const Eigen::Index k = window.size();
  ArnoldiBasis basis;
  basis.q.resize(n, k);
  basis.u = Eigen::MatrixXcd::Zero(k, k);

  Eigen::VectorXcd t(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    t(i) = (pooled.points[static_cast<std::size_t>(i)] - center) /
           pooled.scale;
  }

  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cpow_int(t(i), window.low);
  double nrm = v.norm();
  if (nrm == 0) {
    throw ValidationError(
        "solve_window: degenerate basis (all points at the center)");
  }
  basis.q.col(0) = v / nrm;
  basis.u(0, 0) = 1.0 / nrm;

  for (Eigen::Index j = 0; j + 1 < k; ++j) {
    Eigen::VectorXcd w = t.cwiseProduct(basis.q.col(j));
    // Monomial image of the multiply-by-t shift.
    Eigen::VectorXcd ucol = Eigen::VectorXcd::Zero(k);
    ucol.segment(1, j + 1) = basis.u.col(j).head(j + 1);

    const auto q_used = basis.q.leftCols(j + 1);
    Eigen::VectorXcd h = q_used.adjoint() * w;
    w.noalias() -= q_used * h;
    const Eigen::VectorXcd h2 = q_used.adjoint() * w;
    w.noalias() -= q_used * h2;
    h += h2;
    ucol.head(j + 1).noalias() -= basis.u.leftCols(j + 1).topRows(j + 1) * h;

    nrm = w.norm();
    if (nrm == 0 || !std::isfinite(nrm)) {
      throw InternalError("solve_window: Arnoldi breakdown at column " +
                          std::to_string(j + 1));
    }
    basis.q.col(j + 1) = w / nrm;
    basis.u.col(j + 1) = ucol / nrm;
  }
  return basis;
}

struct LawsonOutcome {
  Eigen::VectorXcd coeffs;  // in the working basis
  Eigen::VectorXcd residual;
  double objective = 0;
  int iterations = 0;
  bool converged = false;
};

// Core Lawson loop over the given working-basis columns. `fixed_block`
// rows (targets zero) are appended unchanged to every weighted
// subproblem; they regularize the solution but stay out of the objective
// and of the weight updates.
LawsonOutcome run_lawson(const Eigen::MatrixXcd& matrix,
                         const Eigen::VectorXcd& targets,
                         const Eigen::MatrixXcd& fixed_block,
                         const SolverOptions& options) {
  const Eigen::Index n = matrix.rows();
  const Eigen::Index k = matrix.cols();
  const Eigen::Index f = fixed_block.rows();
  Eigen::VectorXd weights =
      Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));

  LawsonOutcome best;
  best.objective = std::numeric_limits<double>::infinity();

  double prev_objective = std::numeric_limits<double>::infinity();
  Eigen::MatrixXcd a(n + f, k);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n + f);
  if (f > 0) a.bottomRows(f) = fixed_block;

  // Once the target objective is reached, a few more reweighting steps
  // usually buy extra margin cheaply; the best iterate is kept either way.
  constexpr int kPolishIters = 8;
  int polish_left = -1;

  int iter = 0;
  for (; iter < options.max_iters;) {
    const Eigen::VectorXcd sw = weights.cwiseSqrt().cast<ComplexScalar>();
    a.topRows(n) = sw.asDiagonal() * matrix;
    b.head(n) = sw.asDiagonal() * targets;
    const Eigen::VectorXcd c = a.householderQr().solve(b);
    const Eigen::VectorXcd r = targets - matrix * c;
    const double objective = r.cwiseAbs().maxCoeff();
    ++iter;

    if (!std::isfinite(objective)) {
      throw InternalError("solve_window: non-finite objective in Lawson");
    }
    if (objective < best.objective) {
      best.coeffs = c;
      best.residual = r;
      best.objective = objective;
    }

    if (objective == 0) {
      best.converged = true;
      break;
    }
    if (options.target_objective > 0 &&
        best.objective < options.target_objective) {
      if (polish_left < 0) polish_left = kPolishIters;
      if (polish_left-- == 0) {
        best.converged = true;
        break;
      }
    }
    if (std::abs(objective - prev_objective) <=
        options.tol * std::max(objective, 1e-300)) {
      best.converged = true;
      break;
    }
    prev_objective = objective;

    double wsum = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      weights(i) = std::max(weights(i) * std::abs(r(i)), kWeightFloor);
      wsum += weights(i);
    }
    weights /= wsum;
  }
  best.iterations = iter;
  return best;
}

}  // namespace

ApproximationResult solve_window(const FitTask& task,
                                 const SolverOptions& options) {
  if (options.max_iters < 1) {
    throw ValidationError("solver.max_iters: must be >= 1");
  }
  if (!(options.tol > 0)) {
    throw ValidationError("solver.tol: must be > 0");
  }
  if (options.cage && !(options.target_objective > 0)) {
    throw ValidationError(
        "solver.cage: needs a positive target_objective to scale the cage "
        "rows");
  }
  PooledTask pooled = detail::pool_and_validate(task);
  const std::size_t num_grids = task.grids.size();
  const Eigen::Index n_user = static_cast<Eigen::Index>(pooled.points.size());
  const Eigen::Index k = task.window.size();

  ApproximationResult result;

  if (options.basis == BasisMode::kArnoldi) {
    Eigen::Index n_cage = 0;
    double row_scale = 0;
    if (options.cage) {
      // Equispaced circle just outside the task geometry, dense enough to
      // pin polynomials of the window's top degree between samples. The
      // cage also lifts the pooled set's capacity, which keeps the change
      // of basis back to monomials well conditioned.
      n_cage = std::max<Eigen::Index>(64, 2 * (task.window.high + 1));
      const double radius = options.cage_radius_factor * pooled.scale;
      for (Eigen::Index m = 0; m < n_cage; ++m) {
        const double phi =
            2 * 3.14159265358979323846 * static_cast<double>(m) /
            static_cast<double>(n_cage);
        pooled.points.push_back(
            task.center + radius * ComplexScalar(std::cos(phi), std::sin(phi)));
      }
      pooled.scale = radius;
      row_scale = options.target_objective / options.cage_allowance;
    }

    const ArnoldiBasis basis = build_arnoldi(pooled, task.center, task.window);
    const Eigen::MatrixXcd fixed_block =
        options.cage ? (row_scale * basis.q.bottomRows(n_cage)).eval()
                     : Eigen::MatrixXcd(0, k);
    const LawsonOutcome lawson = run_lawson(
        basis.q.topRows(n_user), pooled.targets, fixed_block, options);

    Eigen::VectorXcd window_coeffs = basis.u * lawson.coeffs;
    // Cancellation estimate: absolute rounding noise in the recovered
    // coefficients is about eps times the positive envelope of the
    // change-of-basis sum; demand six decades of headroom.
    const Eigen::VectorXd envelope =
        basis.u.cwiseAbs() * lawson.coeffs.cwiseAbs();
    double env_max = 0, coeff_max = 0;
    for (Eigen::Index i = 0; i < k; ++i) {
      env_max = std::max(env_max, envelope(i));
      coeff_max = std::max(coeff_max, std::abs(window_coeffs(i)));
    }
    bool reliable = true;
    result.polynomial = detail::window_polynomial(
        window_coeffs, task.window, task.center, pooled.scale, &reliable);
    if (env_max * 1e-16 > 1e-6 * std::max(coeff_max, 1e-290)) {
      reliable = false;
    }
    result.coefficients_reliable = reliable;
    result.grid_errors =
        detail::per_grid_errors(pooled, lawson.residual, num_grids);
    result.iterations = lawson.iterations;
    result.converged = lawson.converged;
  } else {
    Eigen::MatrixXcd v(n_user, k);
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const ComplexScalar t =
          (pooled.points[static_cast<std::size_t>(i)] - task.center) /
          pooled.scale;
      ComplexScalar power = cpow_int(t, task.window.low);
      for (Eigen::Index j = 0; j < k; ++j) {
        v(i, j) = power;
        power *= t;
      }
    }
    double colmax = 0;
    for (Eigen::Index j = 0; j < k; ++j) {
      colmax = std::max(colmax, v.col(j).norm());
    }
    const Eigen::MatrixXcd ridge_block =
        Eigen::MatrixXcd::Identity(k, k) *
        (std::max(options.ridge, 1e-14) * std::max(colmax, 1e-30));
    const LawsonOutcome lawson =
        run_lawson(v, pooled.targets, ridge_block, options);
    result.polynomial = detail::window_polynomial(
        lawson.coeffs, task.window, task.center, pooled.scale,
        &result.coefficients_reliable);
    result.grid_errors =
        detail::per_grid_errors(pooled, lawson.residual, num_grids);
    result.iterations = lawson.iterations;
    result.converged = lawson.converged;
  }

  result.objective = 0;
  for (double e : result.grid_errors) {
    result.objective = std::max(result.objective, e);
  }
  return result;
}

double d_estimate(const std::vector<ComplexScalar>& f_values_on_k,
                  const SampledSet& k_set, const SampledSet& l_set, int n,
                  int m, const SolverOptions& options) {
  if (m > n) {
    throw ValidationError("d_estimate: need m <= n, got m=" +
                          std::to_string(m) + " n=" + std::to_string(n));
  }
  FitTask task;
  task.center = ComplexScalar{};
  task.window = DegreeWindow(m, n);
  task.grids.push_back({k_set, f_values_on_k});
  task.grids.push_back(
      {l_set, std::vector<ComplexScalar>(l_set.points.size())});
  return solve_window(task, options).objective;
}

}  // namespace dualtaylor
