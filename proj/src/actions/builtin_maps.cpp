#include "ofl/builtin_maps.hpp"

#include <cmath>
#include <set>

#include "ofl/spaces.hpp"

namespace ofl {
namespace maps {

GeneratorMap identity() {
  return {"identity", [](const Point& x) { return x; }, {}};
}

GeneratorMap sa(double a) {
  return {"sa", [a](const Point& x) {
            Point y = x;
            y.coords[0] = x.rational ? -a * x.coords[0] : a * x.coords[0];
            return y;
          },
          {}};
}

GeneratorMap square() {
  return {"square", [](const Point& x) {
            Point y = x;
            y.coords[0] = x.coords[0] < 1.0 ? x.coords[0] * x.coords[0] : 0.0;
            return y;
          },
          {}};
}

GeneratorMap step() {
  return {"step", [](const Point& x) {
            Point y = x;
            y.coords[0] = x.coords[0] < 1.0 ? 1.0 : 0.0;
            return y;
          },
          {}};
}

GeneratorMap shift_lp(std::size_t n) {
  return {"shift_lp", [n](const Point& x) {
            std::size_t hot = n;
            std::size_t ones = 0;
            bool basis = x.coords.size() == n;
            for (std::size_t i = 0; basis && i < n; ++i) {
              if (x.coords[i] == 1.0) {
                hot = i;
                ++ones;
              } else if (x.coords[i] != 0.0) {
                basis = false;
              }
            }
            std::vector<double> e(n, 0.0);
            if (basis && ones == 1) {
              e[(hot + 1) % n] = 1.0;
            } else {
              e[0] = 1.0;
            }
            return Point(std::move(e));
          },
          {}};
}

GeneratorMap prus() {
  return {"prus",
          [](const Point& x) {
            std::vector<double> prefix;
            prefix.reserve(x.coords.size() + 1);
            prefix.push_back(1.0 + x.tail);
            prefix.insert(prefix.end(), x.coords.begin(), x.coords.end());
            return EventuallyConstSeqSpace::normalize(Point(std::move(prefix), x.tail));
          },
          [](const Point& x) { return EventuallyConstSeqSpace::constant(1.0 + x.tail); }};
}

GeneratorMap contraction(double c, std::vector<double> center) {
  return {"contraction", [c, center](const Point& x) {
            Point y = x;
            for (std::size_t i = 0; i < y.coords.size(); ++i) {
              const double m = center.empty() ? 0.0 : center[std::min(i, center.size() - 1)];
              y.coords[i] = m + c * (x.coords[i] - m);
            }
            const double m = center.empty() ? 0.0 : center.back();
            y.tail = m + c * (x.tail - m);
            return y;
          },
          {}};
}

GeneratorMap rotation(double angle) {
  const double cs = std::cos(angle), sn = std::sin(angle);
  return {"rotation", [cs, sn](const Point& x) {
            Point y = x;
            y.coords[0] = cs * x.coords[0] - sn * x.coords[1];
            y.coords[1] = sn * x.coords[0] + cs * x.coords[1];
            return y;
          },
          {}};
}

GeneratorMap reflection(double axis_angle) {
  const double c2 = std::cos(2.0 * axis_angle), s2 = std::sin(2.0 * axis_angle);
  return {"reflection", [c2, s2](const Point& x) {
            Point y = x;
            y.coords[0] = c2 * x.coords[0] + s2 * x.coords[1];
            y.coords[1] = s2 * x.coords[0] - c2 * x.coords[1];
            return y;
          },
          {}};
}

}  // namespace maps

const std::vector<MapInfo>& builtin_map_catalog() {
  static const std::vector<MapInfo> catalog{
      {"identity", "any", "", "x -> x"},
      {"sa", "interval", "a in (0,1)", "a x for generic points, -a x for rational-flagged points"},
      {"square", "interval [0,1]", "", "x^2 on [0,1), 1 -> 0"},
      {"step", "interval [0,1]", "", "1 on [0,1), 1 -> 0"},
      {"shift_lp", "lp", "", "e_i -> e_{i+1} cyclically, every other point -> e_1"},
      {"prus", "ecs", "", "(x_1, x_2, ...) -> (1 + tail, x_1, x_2, ...)"},
      {"contraction", "interval, maxnorm, euclidean, lp, ecs", "c, center",
       "center + c (x - center)"},
      {"rotation", "euclidean n>=2, lp p=2", "angle", "rotation of the first two coordinates"},
      {"reflection", "euclidean n>=2, lp p=2", "angle",
       "reflection of the first two coordinates about the line at `angle`"},
  };
  return catalog;
}

namespace {

void allow_keys(const std::string& name, const nlohmann::json& params,
                std::initializer_list<const char*> keys) {
  if (params.is_null()) return;
  if (!params.is_object()) throw UsageError("map '" + name + "': params must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : params.items()) {
    if (!allowed.count(k)) throw UsageError("map '" + name + "': unknown parameter '" + k + "'");
  }
}

double number_param(const nlohmann::json& params, const char* key, double fallback) {
  if (params.is_null() || !params.contains(key)) return fallback;
  const auto& v = params.at(key);
  if (!v.is_number()) throw UsageError(std::string("parameter '") + key + "' must be a number");
  return v.get<double>();
}

bool planar(const MetricSpace& space) {
  if (space.kind() == SpaceKind::Euclidean) return space.dimension() >= 2;
  if (space.kind() == SpaceKind::Lp) {
    return space.dimension() >= 2 && static_cast<const LpSpace&>(space).exponent() == 2.0;
  }
  return false;
}

void require(bool ok, const std::string& name, const MetricSpace& space) {
  if (!ok) throw UsageError("map '" + name + "' is not defined on " + space.id());
}

}  // namespace

GeneratorMap make_builtin_map(const std::string& name, const nlohmann::json& params,
                              const MetricSpace& space) {
  const SpaceKind kind = space.kind();
  if (name == "identity") {
    allow_keys(name, params, {});
    return maps::identity();
  }
  if (name == "sa") {
    allow_keys(name, params, {"a"});
    require(kind == SpaceKind::Interval, name, space);
    const double a = number_param(params, "a", 0.5);
    if (!(a > 0.0 && a < 1.0)) throw UsageError("map 'sa': a must lie in (0,1)");
    const auto& iv = static_cast<const IntervalSpace&>(space);
    require(iv.lower() == -iv.upper(), name, space);
    return maps::sa(a);
  }
  if (name == "square" || name == "step") {
    allow_keys(name, params, {});
    require(kind == SpaceKind::Interval, name, space);
    const auto& iv = static_cast<const IntervalSpace&>(space);
    require(iv.lower() == 0.0 && iv.upper() == 1.0, name, space);
    return name == "square" ? maps::square() : maps::step();
  }
  if (name == "shift_lp") {
    allow_keys(name, params, {});
    require(kind == SpaceKind::Lp && space.contains(Point(std::vector<double>(space.dimension(), 0.0)), 0.0), name, space);
    std::vector<double> e(space.dimension(), 0.0);
    e[0] = 1.0;
    require(space.contains(Point(e), 1e-12), name, space);
    return maps::shift_lp(space.dimension());
  }
  if (name == "prus") {
    allow_keys(name, params, {});
    require(kind == SpaceKind::EventuallyConstant, name, space);
    return maps::prus();
  }
  if (name == "contraction") {
    allow_keys(name, params, {"c", "center"});
    require(kind != SpaceKind::Tree, name, space);
    const double c = number_param(params, "c", 0.5);
    if (!(c >= 0.0 && c < 1.0)) throw UsageError("map 'contraction': c must lie in [0,1)");
    std::vector<double> center;
    if (!params.is_null() && params.contains("center")) {
      const auto& v = params.at("center");
      if (v.is_number()) {
        center = {v.get<double>()};
      } else if (v.is_array()) {
        center = v.get<std::vector<double>>();
      } else {
        throw UsageError("map 'contraction': center must be a number or an array");
      }
    }
    return maps::contraction(c, std::move(center));
  }
  if (name == "rotation" || name == "reflection") {
    allow_keys(name, params, {"angle"});
    require(planar(space), name, space);
    const double angle = number_param(params, "angle", name == "rotation" ? 1.0 : 0.0);
    return name == "rotation" ? maps::rotation(angle) : maps::reflection(angle);
  }
  throw UsageError("unknown map '" + name + "'");
}

}  // namespace ofl
