#pragma once

#include <optional>
#include <string>

#include "dualtaylor/construct.hpp"
#include "dualtaylor/decay.hpp"
#include "dualtaylor/minimax.hpp"

namespace dualtaylor::cli {

// Config files are YAML maps with a strict schema: a leading `format: 1`
// key, no defaults for the contract-bearing tolerances, and any unknown
// key rejected with its field path before any computation starts.

struct SolveConfig {
  FitTask task;
  SolverOptions solver;
};

struct ConstructConfig {
  ConstructionInputs inputs;
};

struct ProbeConfig {
  TargetFunction f;
  SampledSet k_set;
  SampledSet l_set;
  Schedule schedule;
  SolverOptions solver;
};

SolveConfig load_solve_config(const std::string& path);
ConstructConfig load_construct_config(const std::string& path);
ProbeConfig load_probe_config(const std::string& path);

}  // namespace dualtaylor::cli
