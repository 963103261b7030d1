#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ofl/scenario.hpp"
#include "ofl/spaces.hpp"

using namespace ofl;
using nlohmann::json;

namespace {

json minimal() {
  return json::parse(R"({
    "version": 1, "seed": 3, "kind": "analyze",
    "space": {"type": "interval", "a": 0, "b": 1},
    "action": {"generators": [{"map": "square"}]}
  })");
}

}  // namespace

TEST_SUITE("scenario") {
  TEST_CASE("minimal scenario and defaults") {
    const auto s = parse_scenario(minimal());
    CHECK(s.seed == 3);
    CHECK(s.plan.seed == 3);
    CHECK(s.solver.seed == 3);
    CHECK(s.kind == ExperimentKind::Analyze);
    CHECK(s.plan.workers == 1);
    CHECK(s.solver.tail_start == s.solver.horizon / 2);
  }

  TEST_CASE("strict parsing") {
    auto j = minimal();
    j["extra"] = 1;
    CHECK_THROWS_AS(parse_scenario(j), UsageError);
    j = minimal();
    j.erase("seed");
    CHECK_THROWS_AS(parse_scenario(j), UsageError);
    j = minimal();
    j["version"] = 2;
    CHECK_THROWS_AS(parse_scenario(j), UsageError);
    j = minimal();
    j["plan"] = {{"pairs", 10}, {"bogus", true}};
    CHECK_THROWS_AS(parse_scenario(j), UsageError);
    j = minimal();
    j["space"] = {{"type", "hilbert"}};
    CHECK_THROWS_AS(parse_scenario(j), UsageError);
    j = minimal();
    j["space"]["c"] = 2;
    CHECK_THROWS_AS(parse_scenario(j), UsageError);
    j = minimal();
    j["solver"] = {{"methods", {"newton"}}};
    CHECK_THROWS_AS(parse_scenario(j), UsageError);
    j = minimal();
    j["kind"] = "plot";
    CHECK_THROWS_AS(parse_scenario(j), UsageError);
    j = minimal();
    j.erase("action");
    CHECK_THROWS_AS(parse_scenario(j), UsageError);
  }

  TEST_CASE("unknown maps are rejected when the action is built") {
    auto space = make_space(json{{"type", "interval"}, {"a", 0}, {"b", 1}});
    CHECK_THROWS_AS(make_action(space, json::parse(R"({"generators": [{"map": "warp"}]})"), 8, 1), UsageError);
    CHECK_THROWS_AS(make_action(space, json::parse(R"({"generators": [{"map": "prus"}]})"), 8, 1), UsageError);
    CHECK_THROWS_AS(make_action(space, json::parse(R"({"generators": [{"map": "sa", "params": {"a": 0.5}}]})"), 8, 1), UsageError);
    auto sym = make_space(json{{"type", "interval"}, {"a", -1}, {"b", 1}});
    const auto a = make_action(sym, json::parse(R"({"generators": [{"map": "sa", "params": {"a": 0.5}}]})"), 8, 1);
    CHECK(a->law() == CompositionLaw::Single);
  }

  TEST_CASE("every catalog space type builds") {
    CHECK(space_catalog().size() == 6);
    for (const char* text : {R"({"type": "interval", "a": -1, "b": 2})", R"({"type": "maxnorm", "n": 3, "lo": 0, "hi": 1})",
                             R"({"type": "euclidean", "n": 2, "radius": 1})", R"({"type": "lp", "n": 4, "p": 3})",
                             R"({"type": "tree"})", R"({"type": "ecs", "max_prefix": 4, "bound": 2})"}) {
      CAPTURE(text);
      CHECK(make_space(json::parse(text)) != nullptr);
    }
    CHECK(make_space(json::parse(R"({"type": "tree", "vertices": 3, "edges": [[0, 1, 1], [1, 2, 2]]})"))->diameter_bound() == 3.0);
  }

  TEST_CASE("point json round trip") {
    for (const Point& p : {Point::scalar(0.25), Point({1.0, -2.0}), Point({}, 0.5), Point({0.5}, 1.0, true)}) {
      CHECK(point_from_json(point_to_json(p)) == p);
    }
    CHECK(point_from_json(json(0.5)) == Point::scalar(0.5));
  }

  TEST_CASE("overrides") {
    auto s = parse_scenario(minimal());
    apply_overrides(s, {.seed = 9, .workers = 3, .horizon = 10, .epsilon = 1e-4});
    CHECK(s.seed == 9);
    CHECK(s.plan.seed == 9);
    CHECK(s.plan.workers == 3);
    CHECK(s.plan.horizon == 10);
    CHECK(s.solver.horizon == 10);
    CHECK(s.solver.tail_start == 5);
    CHECK(s.solver.epsilon == 1e-4);
    CHECK_THROWS_AS(apply_overrides(s, {.workers = 0}), UsageError);
    CHECK_THROWS_AS(apply_overrides(s, {.epsilon = -1.0}), UsageError);
  }

  TEST_CASE("scenario files mirror the builtins") {
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(OFL_SCENARIO_DIR)) {
      if (entry.path().extension() != ".json") continue;
      ++files;
      const std::string name = entry.path().stem().string();
      CAPTURE(name);
      std::ifstream in(entry.path());
      const json file = json::parse(in);
      CHECK(file == builtin_scenario_json(name));
      CHECK_NOTHROW(load_scenario_file(entry.path().string()));
    }
    CHECK(files == builtin_scenario_names().size());
    for (const char* n : {"example-3-5", "example-4-4", "remark-4-6", "example-4-7", "remark-5-8"}) {
      CHECK(std::find(builtin_scenario_names().begin(), builtin_scenario_names().end(), n) !=
            builtin_scenario_names().end());
    }
    CHECK_THROWS_AS(builtin_scenario("nope"), UsageError);
  }
}
