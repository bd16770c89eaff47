#pragma once

#include <vector>

#include "dualtaylor/polynomial.hpp"
#include "dualtaylor/sets.hpp"

namespace dualtaylor {

// One grid with prescribed values. For a "stay small" set the targets are
// identically zero.
struct GridTask {
  SampledSet grid;
  std::vector<ComplexScalar> targets;
};

// Discrete degree-window minimax problem: find p in
// span{ (z-center)^k : window.low <= k <= window.high } minimizing the max
// over all grid points of |target - p|.
struct FitTask {
  std::vector<GridTask> grids;
  DegreeWindow window;
  ComplexScalar center{};
};

enum class BasisMode {
  // Discretely orthonormal basis built by a Vandermonde-with-Arnoldi
  // recurrence inside the shifted-monomial window span. Best objective
  // accuracy; the map back to monomial coefficients can lose digits for
  // very large windows on thin geometry (see coefficients_reliable).
  kArnoldi,
  // Scaled monomial columns with a tiny ridge. Slightly cruder objectives
  // but the returned Taylor coefficients are the solve variables
  // themselves, so they stay tame and Horner-evaluable. Used where a
  // certificate must be re-verified from its coefficient file.
  kMonomialRidge,
};

struct SolverOptions {
  double tol = 1e-10;     // stop when the objective's relative change dips below
  int max_iters = 500;    // Lawson iteration cap
  int facets = 16;        // polygon facets for the LP oracle
  double target_objective = 0;  // > 0: accept as soon as objective < this
  BasisMode basis = BasisMode::kArnoldi;
  double ridge = 1e-10;   // relative ridge weight in kMonomialRidge

  // Taming cage: a circle of extra sample points just outside the task
  // geometry, appended to every weighted subproblem as fixed rows with a
  // tiny row scale. A bare near-interpolant on thin sets blows up off
  // them, which makes its Taylor coefficients cancel catastrophically;
  // the cage biases the solve toward the tame representative (global size
  // up to about cage_allowance * target_objective / row-scale) without
  // entering the reported objective. Requires target_objective > 0.
  bool cage = false;
  double cage_allowance = 1e14;    // permitted |p| on the cage circle
  double cage_radius_factor = 1.05;
};

struct ApproximationResult {
  CenteredPolynomial polynomial;   // structurally inside the window span
  std::vector<double> grid_errors; // recomputed per grid, task order
  double objective = 0;            // max of grid_errors
  int iterations = 0;
  bool converged = false;
  // False when the orthonormal-to-monomial change of basis cancelled too
  // many digits for the coefficient vector to be trusted; objective and
  // grid_errors are computed in the stable basis and remain valid.
  bool coefficients_reliable = true;
};

// Lawson iteratively reweighted least squares: weights are multiplied by
// residual moduli, floored at 1e-300 and renormalized to sum 1 each
// iteration; each weighted subproblem is solved by an orthogonal-
// triangular factorization. Deterministic for fixed inputs.
//
// Throws ValidationError when the task is underdetermined (total points <
// window size) or the grids fail the separation guard.
ApproximationResult solve_window(const FitTask& task,
                                 const SolverOptions& options = {});

// Independent oracle for small instances (window size <= 40, total points
// <= 2000): solves the same minimax problem as a linear program,
// approximating each modulus constraint by a regular `facets`-gon of
// half-planes, with a self-contained dense primal-dual interior-point
// routine whose closing duality gap certifies the solve. The polygon is
// inscribed, so the LP value over-estimates the true discrete optimum by
// at most sec(pi/facets).
ApproximationResult lp_oracle(const FitTask& task, int facets = 16);

// Discrete surrogate of the degree-window deviation functional: objective
// of solve_window on the two-grid task (f on K, 0 on L) with window (m, n)
// in plain powers of z.
double d_estimate(const std::vector<ComplexScalar>& f_values_on_k,
                  const SampledSet& k_set, const SampledSet& l_set, int n,
                  int m, const SolverOptions& options = {});

}  // namespace dualtaylor
