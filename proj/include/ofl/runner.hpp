#pragma once

#include <filesystem>
#include <iosfwd>

#include "ofl/scenario.hpp"

namespace ofl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvariant = 2;

// $OFL_OUT/<name>-<kind>, or ./ofl-out/<name>-<kind> when OFL_OUT is unset.
std::filesystem::path default_out_dir(const std::string& name, ExperimentKind kind);

// Runs `kind` on the scenario and writes summary.csv, report.json and the per-kind extras
// into `out`. Returns kExitOk, or kExitInvariant when a checked invariant fails.
int run_experiment(const Scenario& scenario, ExperimentKind kind, const std::filesystem::path& out,
                   std::ostream& log);

}  // namespace ofl
