#pragma once

#include "dualtaylor/minimax.hpp"
#include "dualtaylor/targets.hpp"

namespace dualtaylor {

struct ScheduleStep {
  int degree = 0;
  double error_l = 0;
  double error_k1 = 0;
};

struct JointApproximation {
  CenteredPolynomial polynomial;
  double error_l = 0;   // discrete sup |p - g| on the L grid
  double error_k1 = 0;  // discrete sup |p - f1| on the K1 grid
  int schedule_degree = 0;  // accepted degree cap from the doubling schedule
  std::vector<ScheduleStep> trace;
};

// One polynomial simultaneously epsilon/2-close to g on L and 1/(2s)-close
// to f1 on K1, found by unconstrained-window minimax on the union grid
// with a doubling degree schedule 8, 16, 32, ... <= max_degree; the first
// degree meeting both bounds is accepted and recorded.
//
// Solves run in the Arnoldi basis with the taming cage enabled so the
// returned coefficients stay tame and Horner-faithful wherever the
// polynomial is re-evaluated later (certificates embed it verbatim). When
// the fixed grids would leave a schedule degree underdetermined, the
// solve grids are refined by density doubling; the acceptance errors are
// always measured on the given grids. Table targets cannot be refined and
// are rejected if refinement becomes necessary.
//
// Throws ApproximationFailure (carrying the best errors per step) when the
// schedule is exhausted: that signals geometry too hard for the degree
// cap, not a bug.
JointApproximation joint_approximate(const TargetFunction& g,
                                     const SampledSet& l_set,
                                     const TargetFunction& f1,
                                     const SampledSet& k1_set,
                                     const Tolerances& tol, int max_degree,
                                     ComplexScalar center = {},
                                     const SolverOptions& options = {});

}  // namespace dualtaylor
