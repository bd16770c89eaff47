#include "dualtaylor/decay.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "dualtaylor/errors.hpp"
#include "dualtaylor/parallel.hpp"

namespace dualtaylor {

void validate(const Schedule& sched) {
  if (sched.entries.empty()) {
    throw ValidationError("schedule: must not be empty");
  }
  int prev_tau = 0;
  for (std::size_t i = 0; i < sched.entries.size(); ++i) {
    const auto& e = sched.entries[i];
    if (e.sigma < 1 || e.tau <= e.sigma) {
      throw ValidationError("schedule[" + std::to_string(i) +
                            "]: need tau > sigma >= 1, got tau=" +
                            std::to_string(e.tau) +
                            " sigma=" + std::to_string(e.sigma));
    }
    if (e.tau <= prev_tau) {
      throw ValidationError("schedule[" + std::to_string(i) +
                            "]: tau must be strictly increasing");
    }
    prev_tau = e.tau;
  }
}

ProbeResult probe(const TargetFunction& f, const SampledSet& k_set,
                  const SampledSet& l_set, const Schedule& sched,
                  const SolverOptions& options) {
  validate(sched);
  if (!contains_interior(l_set.spec, ComplexScalar{})) {
    throw ValidationError(
        "probe: 0 must lie strictly inside L for the decay hypothesis");
  }
  const std::vector<ComplexScalar> f_values = f.evaluate(k_set.points);

  ProbeResult result;
  result.rows.resize(sched.entries.size());

  parallel_for(sched.entries.size(), 1, [&](std::size_t begin,
                                            std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& entry = sched.entries[i];
      ProbeRow row;
      row.tau = entry.tau;
      row.sigma = entry.sigma;
      FitTask task;
      task.center = ComplexScalar{};
      task.window = DegreeWindow(entry.sigma, entry.tau);
      task.grids.push_back({k_set, f_values});
      task.grids.push_back(
          {l_set, std::vector<ComplexScalar>(l_set.points.size())});
      const ApproximationResult fit = solve_window(task, options);
      row.d_value = fit.objective;
      row.d_root = fit.objective > 0
                       ? std::pow(fit.objective, 1.0 / entry.tau)
                       : 0.0;
      row.converged = fit.converged;
      result.rows[i] = row;
    }
  });

  const std::size_t tail_begin = result.rows.size() / 2;
  for (std::size_t i = tail_begin; i < result.rows.size(); ++i) {
    result.theta_hat = std::max(result.theta_hat, result.rows[i].d_root);
  }
  return result;
}

void write_probe_csv(std::ostream& os, const ProbeResult& result) {
  os << "tau,sigma,d_value,d_root,converged\n";
  for (const auto& row : result.rows) {
    os << row.tau << "," << row.sigma << "," << format_double(row.d_value)
       << "," << format_double(row.d_root) << "," << (row.converged ? 1 : 0)
       << "\n";
  }
}

}  // namespace dualtaylor
