#pragma once

#include <vector>

namespace ofl {

struct EuclideanBall {
  std::vector<double> center;
  double radius = 0.0;
};

// Smallest Euclidean ball containing the points (move-to-front Welzl).
EuclideanBall min_enclosing_ball(const std::vector<std::vector<double>>& points);

}  // namespace ofl
