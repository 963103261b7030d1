#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ofl/actions.hpp"

namespace ofl {

struct MapInfo {
  std::string name;
  std::string spaces;
  std::string params;
  std::string description;
};

const std::vector<MapInfo>& builtin_map_catalog();

// Looks up a map by name; UsageError for unknown names, bad parameters or an
// incompatible space.
GeneratorMap make_builtin_map(const std::string& name, const nlohmann::json& params,
                              const MetricSpace& space);

namespace maps {
GeneratorMap identity();
GeneratorMap sa(double a);
GeneratorMap square();
GeneratorMap step();
GeneratorMap shift_lp(std::size_t n);
GeneratorMap prus();
GeneratorMap contraction(double c, std::vector<double> center);
GeneratorMap rotation(double angle);
GeneratorMap reflection(double axis_angle);
}  // namespace maps

}  // namespace ofl
