#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "dualtaylor/minimax.hpp"
#include "dualtaylor/runge.hpp"
#include "dualtaylor/sequence.hpp"
#include "dualtaylor/sets.hpp"
#include "dualtaylor/targets.hpp"

namespace dualtaylor {

struct ConstructionCaps {
  int runge_max_degree = 2048;   // doubling-schedule cap for the inner polynomial
  int max_window_degree = 2048;  // candidates with lambda_mu above this stop the walk
  int max_candidates = 12;
  long long horizon = 4096;      // subsequence scan horizon
  double oversample = 1.25;      // solve points per window dimension
};

struct CandidateTrace {
  long long mu = 0;
  long long lambda_mu = 0;
  double objective = 0;
  bool accepted = false;
};

// Self-contained record of one construction: the assembled polynomial f,
// the inner polynomial p, the chosen indices, the achieved residuals on
// the construction grids, and everything needed to re-verify from scratch
// (set specs, densities, targets, tolerances).
struct ConstructionCertificate {
  CenteredPolynomial f;  // centered at zeta0
  CenteredPolynomial p;  // centered at zeta0
  int n0 = 0;            // 1-based position of the accepted subsequence index
  long long mu = 0;
  long long lambda_mu = 0;
  double window_error = 0;  // accepted window objective (theta surrogate)
  double residual_l = 0;    // sup |f - g| on the L grid
  double residual_k1 = 0;   // sup |S_mu(f) - f1| on the K1 grid
  double residual_k2 = 0;   // sup |S_lambda_mu(f) - f2| on the K2 grid
  ComplexScalar zeta0{};
  Tolerances tolerances;
  SetSpec l_spec, k1_spec, k2_spec;
  double l_density = 0, k1_density = 0, k2_density = 0;
  TargetFunction g, f1, f2;
  std::vector<CandidateTrace> trace;
};

struct ConstructionInputs {
  TargetFunction g, f1, f2;
  SampledSet l_set, k1_set, k2_set;
  ComplexScalar zeta0{};
  SequenceSpec seq;
  Tolerances tolerances;
  ConstructionCaps caps;
  SolverOptions solver;
  std::optional<SetSpec> omega;  // only used to validate K1, K2 disjointness
};

// Assembles the doubly-targeted approximant f = P(z - zeta0) + p(z):
//   1. p from the Runge step (g on L, f1 on K1);
//   2. in the shifted frame w = z - zeta0, walks the ratio-doubling
//      subsequence, solving the window (mu+1, lambda_mu) problem with
//      targets f2 - p on the K2 grid and 0 on the L grid, accepting the
//      first candidate whose objective drops under min(eps/2, 1/(2s));
//   3. verifies the truncation identities and the three residual bounds
//      before emitting the certificate.
//
// Throws RefusalError for bounded-ratio sequences (nothing is solved),
// ApproximationFailure when caps run out (carrying the objective trace),
// and InternalError if an exact identity fails (always a bug).
ConstructionCertificate construct(const ConstructionInputs& in);

struct VerificationReport {
  double residual_l = 0, residual_k1 = 0, residual_k2 = 0;
  bool residual_l_ok = false, residual_k1_ok = false, residual_k2_ok = false;
  bool identity_mu_ok = false;      // S_mu(f) == p, 1e-12 relative
  bool identity_lambda_ok = false;  // S_lambda_mu(f) == f, coefficient-exact
  bool window_ok = false;           // window metadata consistent with f, p
  double density = 0;               // density actually used
  bool pass = false;
};

// Re-samples every set at density * density_multiplier, re-evaluates f, p
// and the targets, and checks the residuals against twice the certified
// bounds (a discrete max under-estimates the true sup norm; the slack
// policy grants x2 on refined grids), plus exact re-checks of both
// truncation identities.
VerificationReport verify(const ConstructionCertificate& cert,
                          double density_multiplier);

// Certificate file format: a `format: 1` line, scalar fields one per line,
// embedded set specs, targets and coefficient blocks, all numbers
// shortest-round-trip decimals. verify() consumes exactly this file.
void write_certificate(std::ostream& os, const ConstructionCertificate& cert);
ConstructionCertificate read_certificate(std::istream& is);

}  // namespace dualtaylor
