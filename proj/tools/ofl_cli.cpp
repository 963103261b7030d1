#include <iostream>

#include <CLI11.hpp>

#include "ofl/builtin_maps.hpp"
#include "ofl/runner.hpp"

namespace {

struct ExperimentFlags {
  std::string config;
  std::string scenario;
  std::string out;
  ofl::Overrides overrides;
};

void add_experiment_flags(CLI::App* sub, ExperimentFlags& f) {
  auto* config = sub->add_option("--config", f.config, "scenario JSON file");
  auto* scenario = sub->add_option("--scenario", f.scenario, "builtin scenario name");
  config->excludes(scenario);
  sub->add_option("--out", f.out, "output directory (default $OFL_OUT/<name>-<kind>)");
  sub->add_option("--seed", f.overrides.seed, "master seed");
  sub->add_option("--workers", f.overrides.workers, "worker threads for pair sampling");
  sub->add_option("--horizon", f.overrides.horizon, "orbit horizon H");
  sub->add_option("--epsilon", f.overrides.epsilon, "solver residual tolerance");
}

ofl::Scenario load(const ExperimentFlags& f, std::optional<ofl::ExperimentKind> kind) {
  ofl::Scenario s;
  if (!f.config.empty()) {
    s = ofl::load_scenario_file(f.config);
  } else if (!f.scenario.empty()) {
    s = ofl::builtin_scenario(f.scenario);
  } else if (kind == ofl::ExperimentKind::Repro) {
    s = ofl::builtin_scenario("repro");
  } else {
    throw ofl::UsageError("one of --config or --scenario is required");
  }
  ofl::apply_overrides(s, f.overrides);
  return s;
}

std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(s.size() + 2 > width ? 2 : width - s.size(), ' ');
}

int list(const std::string& what) {
  if (what == "spaces") {
    for (const auto& e : ofl::space_catalog()) {
      std::cout << pad(e.name, 12) << pad(e.params, 38) << e.description << "\n";
    }
  } else if (what == "maps") {
    for (const auto& m : ofl::builtin_map_catalog()) {
      std::cout << pad(m.name, 13) << pad(m.spaces, 31) << pad(m.params, 14) << m.description << "\n";
    }
  } else if (what == "scenarios") {
    for (const auto& n : ofl::builtin_scenario_names()) {
      const auto j = ofl::builtin_scenario_json(n);
      std::cout << pad(n, 20) << pad(j.at("kind").get<std::string>(), 9) << j.value("description", "")
                << "\n";
    }
  } else {
    throw ofl::UsageError("list: expected spaces, maps or scenarios");
  }
  return ofl::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbit-Lipschitz fixed-point toolkit"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    std::optional<ofl::ExperimentKind> kind;
    const char* help;
  };
  const std::vector<Sub> subs{
      {"analyze", ofl::ExperimentKind::Analyze, "estimate Lipschitz constants and check (star)"},
      {"solve", ofl::ExperimentKind::Solve, "run the fixed-point solvers"},
      {"kappa", ofl::ExperimentKind::Kappa, "bracket the Lifschitz characteristic of a space"},
      {"normal", ofl::ExperimentKind::Normal, "estimate the normal structure coefficient"},
      {"repro", ofl::ExperimentKind::Repro, "run the reproduction suite"},
      {"run", std::nullopt, "run the experiment named by the scenario's kind"},
  };
  std::vector<ExperimentFlags> flags(subs.size());
  std::vector<CLI::App*> apps;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    apps.push_back(app.add_subcommand(subs[i].name, subs[i].help));
    add_experiment_flags(apps.back(), flags[i]);
  }
  std::string catalog;
  auto* list_cmd = app.add_subcommand("list", "list spaces, maps or scenarios");
  list_cmd->add_option("catalog", catalog, "spaces | maps | scenarios")
      ->required()
      ->check(CLI::IsMember({"spaces", "maps", "scenarios"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ofl::kExitOk : ofl::kExitUsage;
  }

  try {
    if (list_cmd->parsed()) return list(catalog);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!apps[i]->parsed()) continue;
      const auto scenario = load(flags[i], subs[i].kind);
      const auto kind = subs[i].kind.value_or(scenario.kind);
      const std::filesystem::path out =
          flags[i].out.empty() ? ofl::default_out_dir(scenario.name, kind) : std::filesystem::path(flags[i].out);
      return ofl::run_experiment(scenario, kind, out, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ofl::kExitUsage;
  }
  return ofl::kExitUsage;
}
