#pragma once

#include <iosfwd>

#include "dualtaylor/minimax.hpp"
#include "dualtaylor/targets.hpp"

namespace dualtaylor {

// Window schedule (tau_n, sigma_n) with tau strictly increasing and
// tau > sigma >= 1 rowwise.
struct Schedule {
  struct Entry {
    int tau = 0;
    int sigma = 0;
  };
  std::vector<Entry> entries;
};

void validate(const Schedule& sched);

struct ProbeRow {
  int tau = 0;
  int sigma = 0;
  double d_value = 0;
  double d_root = 0;  // d_value^(1/tau)
  bool converged = false;
};

struct ProbeResult {
  std::vector<ProbeRow> rows;  // schedule order
  // Conservative finite-run estimate of the geometric decay rate: max of
  // d_root over the tail half of the schedule.
  double theta_hat = 0;
};

// Evaluates the window deviation d_{tau,sigma}(f, K, L) along the schedule.
// Requires 0 strictly inside L and f evaluable on the K grid; rows whose
// solve does not converge are flagged and the run continues. Rows are
// independent solves and may run on multiple workers; the output order is
// the schedule order regardless.
ProbeResult probe(const TargetFunction& f, const SampledSet& k_set,
                  const SampledSet& l_set, const Schedule& sched,
                  const SolverOptions& options = {});

// CSV: header tau,sigma,d_value,d_root,converged; shortest-round-trip
// decimals; converged as 0/1.
void write_probe_csv(std::ostream& os, const ProbeResult& result);

}  // namespace dualtaylor
