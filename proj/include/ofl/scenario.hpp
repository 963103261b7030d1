#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ofl/actions.hpp"
#include "ofl/analysis.hpp"
#include "ofl/solvers.hpp"

namespace ofl {

enum class ExperimentKind { Analyze, Solve, Kappa, Normal, Repro };

std::string_view experiment_name(ExperimentKind kind);
ExperimentKind parse_experiment(const std::string& name);

struct CatalogEntry {
  std::string name;
  std::string params;
  std::string description;
};

const std::vector<CatalogEntry>& space_catalog();

// Tagged space record, e.g. {"type": "interval", "a": 0, "b": 1}.
MetricSpaceHandle make_space(const nlohmann::json& desc);
// {"law": "single", "generators": [{"map": "step", "params": {}}]}
std::shared_ptr<Action> make_action(MetricSpaceHandle space, const nlohmann::json& desc,
                                    int horizon, std::uint64_t seed);

// A number, an array of coordinates, or {"coords": [...], "tail": t, "rational": b}.
Point point_from_json(const nlohmann::json& j);
nlohmann::json point_to_json(const Point& p);

struct Scenario {
  int version = 1;
  std::string name;
  std::string description;
  ExperimentKind kind = ExperimentKind::Analyze;
  std::uint64_t seed = 0;
  nlohmann::json space;
  nlohmann::json action;

  SamplePlan plan;
  std::vector<double> star_k;

  std::vector<std::string> methods{"picard", "orbit_center", "lifschitz"};
  std::optional<Point> x0;
  SolverConfig solver;
  bool tail_start_set = false;

  std::size_t budget = 100000;
  std::size_t n_sets = 64;
  std::size_t density = 0;
};

// Strict parse: version must be 1, seed is mandatory, unknown keys are rejected.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario_file(const std::string& path);

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<int> horizon;
  std::optional<double> epsilon;
};

void apply_overrides(Scenario& s, const Overrides& o);

// Builtin scenarios, one per worked example plus the constants runs.
const std::vector<std::string>& builtin_scenario_names();
nlohmann::json builtin_scenario_json(const std::string& name);
Scenario builtin_scenario(const std::string& name);

}  // namespace ofl
