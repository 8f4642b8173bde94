#pragma once

#include <cstdint>
#include <string>

#include "conemetric/json_io.hpp"

namespace conemetric {

enum class Command {
  CheckCone,
  Norm,
  VerifyMetric,
  TopologyCheck,
  CauchyCheck,
  Fixpoint,
  Suite,
};

std::string command_name(Command command);

struct RunConfig {
  Command command = Command::Suite;
  std::string input_path;   // required for everything except suite
  std::string output_path;  // empty writes the report to stdout only
  std::uint64_t seed = 0;
  Tolerances tolerances;
  int trials = 200;
  int max_iter = 10000;
  double fix_tol = 1e-8;  // fixpoint stopping tolerance
  std::string start_id;   // fixpoint starting point; defaults to the first point
};

struct RunOutcome {
  int exit_status = 0;  // 0 iff the violation list is empty
  Json report;
};

// Dispatches the command, producing one JSON report of the shape
// {command, config_echo, results, violations}. Identical configs produce
// byte-identical reports. Parse failures and numeric degeneracies surface as
// violation entries naming the failing stage, with a nonzero exit status.
RunOutcome run(const RunConfig& config);

// CONEMETRIC_SEED, when set, overrides the configured seed.
void apply_env_overrides(RunConfig& config);

}  // namespace conemetric
