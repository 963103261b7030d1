#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "ofl/point.hpp"
#include "ofl/spaces.hpp"

namespace ofl::test {

inline std::vector<double> random_vector(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = uniform(rng, lo, hi);
  return v;
}

inline std::vector<Point> sample_points(const MetricSpace& s, Rng& rng, std::size_t n) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(s.sample(rng));
  return out;
}

// Every catalog space with a small parameter choice.
inline std::vector<MetricSpaceHandle> all_spaces() {
  return {std::make_shared<IntervalSpace>(0.0, 1.0),
          std::make_shared<MaxNormSpace>(MaxNormSpace::cube(3, -1.0, 1.0)),
          std::make_shared<EuclideanSpace>(2, 1.0),
          std::make_shared<EuclideanSpace>(3, 2.0, std::vector<double>{1.0, 0.0, -1.0}),
          std::make_shared<LpSpace>(4, 1.0),
          std::make_shared<LpSpace>(3, 3.0),
          std::make_shared<TreeSpace>(TreeSpace::default_tree()),
          std::make_shared<EventuallyConstSeqSpace>(6, 1.0)};
}

// Brute-force D(x, A).
inline double brute_sup(const MetricSpace& s, const Point& x, const std::vector<Point>& a) {
  double m = 0.0;
  for (const auto& p : a) m = std::max(m, s.distance(x, p));
  return m;
}

}  // namespace ofl::test
