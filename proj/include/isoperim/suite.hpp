#pragma once

// Named verification suites behind the CLI `verify` subcommand.

#include <string>
#include <vector>

#include "isoperim/report.hpp"

namespace isoperim {

const std::vector<std::string>& suite_names();
bool suite_known(const std::string& name);

// Runs the named suite with cfg.jobs workers; deterministic for a fixed
// config (task-level parallelism, per-task seeded RNG, ordered merge).
SuiteResult run_suite(const RunConfig& cfg);

}  // namespace isoperim
