#include "ofl/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ofl/builtin_maps.hpp"
#include "ofl/spaces.hpp"

namespace ofl {

using nlohmann::json;

namespace {

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw UsageError(where + ": expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw UsageError(where + ": unknown key '" + k + "'");
  }
}

double get_number(const json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw UsageError(where + ": '" + key + "' must be a number");
  return j.at(key).get<double>();
}

std::uint64_t get_count(const json& j, const char* key, std::uint64_t fallback,
                        const std::string& where) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw UsageError(where + ": '" + key + "' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

bool get_bool(const json& j, const char* key, bool fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw UsageError(where + ": '" + key + "' must be a boolean");
  return j.at(key).get<bool>();
}

std::string get_string(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw UsageError(where + ": '" + key + "' must be a string");
  }
  return j.at(key).get<std::string>();
}

std::vector<double> get_bounds(const json& j, const char* key, std::size_t n, double fallback,
                               const std::string& where) {
  if (!j.contains(key)) return std::vector<double>(n, fallback);
  const auto& v = j.at(key);
  if (v.is_number()) return std::vector<double>(n, v.get<double>());
  if (v.is_array()) {
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw UsageError(where + ": '" + key + "' entries must be numbers");
      out.push_back(e.get<double>());
    }
    if (out.size() != n) throw UsageError(where + ": '" + key + "' has the wrong length");
    return out;
  }
  throw UsageError(where + ": '" + key + "' must be a number or an array");
}

}  // namespace

std::string_view experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Analyze: return "analyze";
    case ExperimentKind::Solve: return "solve";
    case ExperimentKind::Kappa: return "kappa";
    case ExperimentKind::Normal: return "normal";
    case ExperimentKind::Repro: return "repro";
  }
  return "unknown";
}

ExperimentKind parse_experiment(const std::string& name) {
  for (auto k : {ExperimentKind::Analyze, ExperimentKind::Solve, ExperimentKind::Kappa,
                 ExperimentKind::Normal, ExperimentKind::Repro}) {
    if (experiment_name(k) == name) return k;
  }
  throw UsageError("unknown experiment kind '" + name + "'");
}

const std::vector<CatalogEntry>& space_catalog() {
  static const std::vector<CatalogEntry> catalog{
      {"interval", "a, b", "[a, b] with |x - y|"},
      {"maxnorm", "n, lo, hi", "box in R^n with the max norm"},
      {"euclidean", "n, radius, center", "closed Euclidean ball in R^n"},
      {"lp", "n, p, radius", "closed ball about 0 in (R^n, ||.||_p)"},
      {"tree", "vertices, edges [[u, v, length], ...]", "finite metric tree; default 7-vertex tree"},
      {"ecs", "max_prefix, bound", "eventually constant sequences with the sup metric"},
  };
  return catalog;
}

MetricSpaceHandle make_space(const json& desc) {
  const std::string where = "space";
  if (!desc.is_object()) throw UsageError("space: expected an object");
  const std::string type = get_string(desc, "type", where);
  if (type == "interval") {
    only_keys(desc, where, {"type", "a", "b"});
    return std::make_shared<IntervalSpace>(get_number(desc, "a", 0.0, where),
                                           get_number(desc, "b", 1.0, where));
  }
  if (type == "maxnorm") {
    only_keys(desc, where, {"type", "n", "lo", "hi"});
    const auto n = get_count(desc, "n", 2, where);
    if (n == 0) throw UsageError("space: n must be positive");
    return std::make_shared<MaxNormSpace>(get_bounds(desc, "lo", n, 0.0, where),
                                          get_bounds(desc, "hi", n, 1.0, where));
  }
  if (type == "euclidean") {
    only_keys(desc, where, {"type", "n", "radius", "center"});
    const auto n = get_count(desc, "n", 2, where);
    std::vector<double> center;
    if (desc.contains("center")) center = get_bounds(desc, "center", n, 0.0, where);
    return std::make_shared<EuclideanSpace>(n, get_number(desc, "radius", 1.0, where),
                                            std::move(center));
  }
  if (type == "lp") {
    only_keys(desc, where, {"type", "n", "p", "radius"});
    return std::make_shared<LpSpace>(get_count(desc, "n", 8, where),
                                     get_number(desc, "p", 2.0, where),
                                     get_number(desc, "radius", 1.0, where));
  }
  if (type == "tree") {
    only_keys(desc, where, {"type", "vertices", "edges"});
    if (!desc.contains("vertices") && !desc.contains("edges")) {
      return std::make_shared<TreeSpace>(TreeSpace::default_tree());
    }
    const auto n = get_count(desc, "vertices", 0, where);
    if (!desc.contains("edges") || !desc.at("edges").is_array()) {
      throw UsageError("space: tree needs an 'edges' array");
    }
    std::vector<TreeSpace::Edge> edges;
    for (const auto& e : desc.at("edges")) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
          !e[1].is_number_integer() || !e[2].is_number()) {
        throw UsageError("space: tree edges are [u, v, length]");
      }
      edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<double>()});
    }
    return std::make_shared<TreeSpace>(n, std::move(edges));
  }
  if (type == "ecs") {
    only_keys(desc, where, {"type", "max_prefix", "bound"});
    return std::make_shared<EventuallyConstSeqSpace>(get_count(desc, "max_prefix", 8, where),
                                                     get_number(desc, "bound", 1.0, where));
  }
  throw UsageError("unknown space type '" + type + "'");
}

std::shared_ptr<Action> make_action(MetricSpaceHandle space, const json& desc, int horizon,
                                    std::uint64_t seed) {
  const std::string where = "action";
  only_keys(desc, where, {"law", "generators"});
  if (!desc.contains("generators") || !desc.at("generators").is_array() ||
      desc.at("generators").empty()) {
    throw UsageError("action: 'generators' must be a nonempty array");
  }
  std::vector<GeneratorMap> gens;
  for (const auto& g : desc.at("generators")) {
    only_keys(g, "action generator", {"map", "params"});
    const std::string name = get_string(g, "map", "action generator");
    gens.push_back(make_builtin_map(name, g.contains("params") ? g.at("params") : json(), *space));
  }
  std::string law = gens.size() == 1 ? "single" : "commuting";
  if (desc.contains("law")) law = get_string(desc, "law", where);
  CompositionLaw l;
  if (law == "single") {
    l = CompositionLaw::Single;
  } else if (law == "commuting") {
    l = CompositionLaw::Commuting;
  } else if (law == "free") {
    l = CompositionLaw::Free;
  } else {
    throw UsageError("action: unknown law '" + law + "'");
  }
  return std::make_shared<Action>(std::move(space), std::move(gens), l, horizon, seed);
}

Point point_from_json(const json& j) {
  if (j.is_number()) return Point::scalar(j.get<double>());
  if (j.is_array()) {
    std::vector<double> c;
    for (const auto& e : j) {
      if (!e.is_number()) throw UsageError("point: coordinates must be numbers");
      c.push_back(e.get<double>());
    }
    return Point(std::move(c));
  }
  if (j.is_object()) {
    only_keys(j, "point", {"coords", "tail", "rational"});
    Point p = j.contains("coords") ? point_from_json(j.at("coords")) : Point();
    p.tail = get_number(j, "tail", 0.0, "point");
    p.rational = get_bool(j, "rational", false, "point");
    return p;
  }
  throw UsageError("point: expected a number, an array or an object");
}

json point_to_json(const Point& p) {
  if (p.tail == 0.0 && !p.rational) {
    if (p.coords.size() == 1) return p.coords[0];
    return p.coords;
  }
  json j{{"coords", p.coords}, {"tail", p.tail}};
  if (p.rational) j["rational"] = true;
  return j;
}

Scenario parse_scenario(const json& j) {
  const std::string where = "scenario";
  only_keys(j, where,
            {"version", "name", "description", "kind", "seed", "space", "action", "plan", "solver",
             "constants"});
  Scenario s;
  if (!j.contains("version") || !j.at("version").is_number_integer() ||
      j.at("version").get<int>() != 1) {
    throw UsageError("scenario: 'version' must be 1");
  }
  if (!j.contains("seed")) throw UsageError("scenario: 'seed' is mandatory");
  s.seed = get_count(j, "seed", 0, where);
  s.name = j.contains("name") ? get_string(j, "name", where) : "scenario";
  s.description = j.contains("description") ? get_string(j, "description", where) : "";
  s.kind = parse_experiment(get_string(j, "kind", where));
  if (s.kind != ExperimentKind::Repro) {
    if (!j.contains("space")) throw UsageError("scenario: 'space' is required");
    s.space = j.at("space");
    make_space(s.space);
  }
  if (j.contains("action")) s.action = j.at("action");
  if ((s.kind == ExperimentKind::Analyze || s.kind == ExperimentKind::Solve) && s.action.is_null()) {
    throw UsageError("scenario: 'action' is required for " + std::string(experiment_name(s.kind)));
  }

  s.plan.seed = s.seed;
  s.solver.seed = s.seed;
  if (j.contains("plan")) {
    const auto& p = j.at("plan");
    const std::string w = "plan";
    only_keys(p, w,
              {"pairs", "horizon", "words", "window", "anchors", "max_anchor_pairs", "explicit_pairs",
               "fixed_x", "floor", "tol", "workers", "star_k"});
    s.plan.pairs = get_count(p, "pairs", s.plan.pairs, w);
    s.plan.horizon = static_cast<int>(get_count(p, "horizon", s.plan.horizon, w));
    s.plan.words = get_count(p, "words", s.plan.words, w);
    s.plan.window = static_cast<int>(get_count(p, "window", 0, w));
    s.plan.anchors = get_bool(p, "anchors", s.plan.anchors, w);
    s.plan.max_anchor_pairs = get_count(p, "max_anchor_pairs", s.plan.max_anchor_pairs, w);
    s.plan.floor = get_number(p, "floor", s.plan.floor, w);
    s.plan.tol = get_number(p, "tol", s.plan.tol, w);
    s.plan.workers = get_count(p, "workers", 1, w);
    if (p.contains("explicit_pairs")) {
      if (!p.at("explicit_pairs").is_array()) throw UsageError("plan: explicit_pairs must be an array");
      for (const auto& e : p.at("explicit_pairs")) {
        if (!e.is_array() || e.size() != 2) throw UsageError("plan: explicit pairs are [x, y]");
        s.plan.explicit_pairs.push_back({point_from_json(e[0]), point_from_json(e[1])});
      }
    }
    if (p.contains("fixed_x")) s.plan.fixed_x = point_from_json(p.at("fixed_x"));
    if (p.contains("star_k")) {
      if (!p.at("star_k").is_array()) throw UsageError("plan: star_k must be an array");
      for (const auto& k : p.at("star_k")) {
        if (!k.is_number()) throw UsageError("plan: star_k entries must be numbers");
        s.star_k.push_back(k.get<double>());
      }
    }
  }
  if (s.plan.horizon < 1 || s.plan.words < 1) throw UsageError("plan: horizon and words must be >= 1");

  if (j.contains("solver")) {
    const auto& p = j.at("solver");
    const std::string w = "solver";
    only_keys(p, w,
              {"methods", "x0", "epsilon", "max_iter", "horizon", "tail_start", "k", "candidates",
               "picard_word"});
    if (p.contains("methods")) {
      s.methods.clear();
      for (const auto& m : p.at("methods")) {
        if (!m.is_string()) throw UsageError("solver: methods must be strings");
        const auto name = m.get<std::string>();
        if (name != "picard" && name != "orbit_center" && name != "lifschitz") {
          throw UsageError("solver: unknown method '" + name + "'");
        }
        s.methods.push_back(name);
      }
    }
    if (p.contains("x0")) s.x0 = point_from_json(p.at("x0"));
    s.solver.epsilon = get_number(p, "epsilon", s.solver.epsilon, w);
    s.solver.max_iter = static_cast<int>(get_count(p, "max_iter", s.solver.max_iter, w));
    s.solver.horizon = static_cast<int>(get_count(p, "horizon", s.solver.horizon, w));
    s.tail_start_set = p.contains("tail_start");
    s.solver.tail_start =
        static_cast<int>(get_count(p, "tail_start", static_cast<std::uint64_t>(s.solver.horizon / 2), w));
    s.solver.k = get_number(p, "k", s.solver.k, w);
    s.solver.candidates = get_count(p, "candidates", s.solver.candidates, w);
    if (p.contains("picard_word")) {
      s.solver.picard_word.clear();
      for (const auto& g : p.at("picard_word")) {
        if (!g.is_number_integer()) throw UsageError("solver: picard_word holds generator indices");
        s.solver.picard_word.push_back(g.get<std::uint16_t>());
      }
    }
    s.solver.validate();
  }

  if (j.contains("constants")) {
    const auto& p = j.at("constants");
    only_keys(p, "constants", {"budget", "n_sets", "density"});
    s.budget = get_count(p, "budget", s.budget, "constants");
    s.n_sets = get_count(p, "n_sets", s.n_sets, "constants");
    s.density = get_count(p, "density", s.density, "constants");
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("malformed config '" + path + "': " + e.what());
  }
  return parse_scenario(j);
}

void apply_overrides(Scenario& s, const Overrides& o) {
  if (o.seed) {
    s.seed = *o.seed;
    s.plan.seed = *o.seed;
    s.solver.seed = *o.seed;
  }
  if (o.workers) {
    if (*o.workers == 0) throw UsageError("--workers must be at least 1");
    s.plan.workers = *o.workers;
  }
  if (o.horizon) {
    if (*o.horizon < 1) throw UsageError("--horizon must be at least 1");
    s.plan.horizon = *o.horizon;
    s.solver.horizon = *o.horizon;
    if (!s.tail_start_set || s.solver.tail_start >= *o.horizon) s.solver.tail_start = *o.horizon / 2;
    if (s.plan.window > s.plan.horizon) s.plan.window = 0;
  }
  if (o.epsilon) {
    if (!(*o.epsilon > 0.0)) throw UsageError("--epsilon must be positive");
    s.solver.epsilon = *o.epsilon;
  }
}

}  // namespace ofl
