#include <map>

#include "ofl/scenario.hpp"

namespace ofl {
namespace {

const std::map<std::string, const char*>& sources() {
  static const std::map<std::string, const char*> m{
      {"example-3-5", R"({
  "version": 1,
  "name": "example-3-5",
  "description": "S_a on [-1,1] with a = 3/5: orbit 3a-Lipschitzian, fixed point 0",
  "kind": "analyze",
  "seed": 35,
  "space": {"type": "interval", "a": -1, "b": 1},
  "action": {"law": "single", "generators": [{"map": "sa", "params": {"a": 0.6}}]},
  "plan": {"pairs": 512, "horizon": 64, "words": 32},
  "solver": {"methods": ["picard", "lifschitz"], "x0": 0.7, "k": 1.8}
})"},
      {"example-4-4", R"({
  "version": 1,
  "name": "example-4-4",
  "description": "x^2 on [0,1) with 1 -> 0: condition (star) at k = 1, orbit ratios approach 2",
  "kind": "analyze",
  "seed": 44,
  "space": {"type": "interval", "a": 0, "b": 1},
  "action": {"generators": [{"map": "square"}]},
  "plan": {
    "pairs": 20000,
    "horizon": 32,
    "words": 32,
    "explicit_pairs": [[0.45, 0.9], [0.495, 0.99], [0.4995, 0.999], [0.49995, 0.9999]],
    "star_k": [1]
  },
  "solver": {"methods": ["picard", "orbit_center", "lifschitz"], "x0": 0.9, "k": 1.5}
})"},
      {"remark-4-6", R"({
  "version": 1,
  "name": "remark-4-6",
  "description": "step map on [0,1]: orbit 2-Lipschitzian, fixed-point free",
  "kind": "analyze",
  "seed": 46,
  "space": {"type": "interval", "a": 0, "b": 1},
  "action": {"generators": [{"map": "step"}]},
  "plan": {"pairs": 256, "horizon": 64, "words": 32, "explicit_pairs": [[0.5, 1]], "star_k": [2, 1.9]},
  "solver": {"methods": ["picard", "orbit_center", "lifschitz"], "x0": 0.3, "k": 1.9}
})"},
      {"example-4-7", R"({
  "version": 1,
  "name": "example-4-7",
  "description": "cyclic shift on the unit ball of l_2^8: strong-orbit 2^(1/p)-Lipschitzian at x = 0",
  "kind": "analyze",
  "seed": 47,
  "space": {"type": "lp", "n": 8, "p": 2},
  "action": {"generators": [{"map": "shift_lp"}]},
  "plan": {"pairs": 256, "horizon": 32, "words": 16, "anchors": false, "fixed_x": [0, 0, 0, 0, 0, 0, 0, 0]},
  "solver": {"methods": ["picard", "orbit_center", "lifschitz"], "x0": [0, 0, 0, 0, 0, 0, 0, 0], "k": 1.4142135623730951}
})"},
      {"remark-5-8", R"({
  "version": 1,
  "name": "remark-5-8",
  "description": "isometric fixed-point free map on eventually constant sequences",
  "kind": "solve",
  "seed": 58,
  "space": {"type": "ecs", "max_prefix": 8, "bound": 1},
  "action": {"generators": [{"map": "prus"}]},
  "plan": {"pairs": 256, "horizon": 16, "words": 8},
  "solver": {"methods": ["picard", "orbit_center"], "x0": {"coords": [], "tail": 0}, "max_iter": 200}
})"},
      {"kappa-interval", R"({
  "version": 1,
  "name": "kappa-interval",
  "description": "Lifschitz characteristic of [0,1]",
  "kind": "kappa",
  "seed": 22,
  "space": {"type": "interval", "a": 0, "b": 1},
  "constants": {"budget": 100000}
})"},
      {"kappa-euclidean2", R"({
  "version": 1,
  "name": "kappa-euclidean2",
  "description": "Lifschitz characteristic of the Euclidean unit disc",
  "kind": "kappa",
  "seed": 22,
  "space": {"type": "euclidean", "n": 2, "radius": 1},
  "constants": {"budget": 100000}
})"},
      {"kappa-maxnorm2", R"({
  "version": 1,
  "name": "kappa-maxnorm2",
  "description": "Lifschitz characteristic of the max-norm square",
  "kind": "kappa",
  "seed": 22,
  "space": {"type": "maxnorm", "n": 2, "lo": 0, "hi": 1},
  "constants": {"budget": 100000}
})"},
      {"repro", R"({
  "version": 1,
  "name": "repro",
  "description": "every worked example and invariant suite, one row each",
  "kind": "repro",
  "seed": 1,
  "constants": {"budget": 100000, "n_sets": 64}
})"},
      {"normal-interval", R"({
  "version": 1,
  "name": "normal-interval",
  "description": "normal structure coefficient of [0,1]",
  "kind": "normal",
  "seed": 58,
  "space": {"type": "interval", "a": 0, "b": 1},
  "constants": {"n_sets": 64}
})"},
      {"normal-maxnorm3", R"({
  "version": 1,
  "name": "normal-maxnorm3",
  "description": "normal structure coefficient of the max-norm cube",
  "kind": "normal",
  "seed": 58,
  "space": {"type": "maxnorm", "n": 3, "lo": 0, "hi": 1},
  "constants": {"n_sets": 64}
})"},
      {"normal-euclidean2", R"({
  "version": 1,
  "name": "normal-euclidean2",
  "description": "normal structure coefficient of the Euclidean unit disc",
  "kind": "normal",
  "seed": 58,
  "space": {"type": "euclidean", "n": 2, "radius": 1},
  "constants": {"n_sets": 64}
})"},
  };
  return m;
}

}  // namespace

const std::vector<std::string>& builtin_scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : sources()) out.push_back(k);
    return out;
  }();
  return names;
}

nlohmann::json builtin_scenario_json(const std::string& name) {
  const auto it = sources().find(name);
  if (it == sources().end()) throw UsageError("unknown scenario '" + name + "'");
  return nlohmann::json::parse(it->second);
}

Scenario builtin_scenario(const std::string& name) {
  return parse_scenario(builtin_scenario_json(name));
}

}  // namespace ofl
