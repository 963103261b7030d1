#pragma once

#include <span>

#include "ofl/metric_space.hpp"

namespace ofl {

inline constexpr double kDefaultTolerance = 1e-9;

// D(x, A) = max_{a in A} d(x, a)
double sup_distance(const MetricSpace& space, const Point& x, const PointSet& a);
// δ(A)
double diameter(const MetricSpace& space, const PointSet& a);
// r(A) = min_{x in A} D(x, A)
double inner_radius(const MetricSpace& space, const PointSet& a);
CoverDescriptor admissible_cover(const MetricSpace& space, const PointSet& a);
CenterResult chebyshev_center(const MetricSpace& space, const PointSet& a);

// Checks the preconditions of the two-ball oracle, then forwards to the space.
std::optional<RegularityResult> regularity_oracle(const MetricSpace& space, const Point& x,
                                                  const Point& y, double r, double k, double mu);

// Unchecked variants over raw point lists.
double sup_distance(const MetricSpace& space, const Point& x, std::span<const Point> a);
double diameter(const MetricSpace& space, std::span<const Point> a);
double inner_radius(const MetricSpace& space, std::span<const Point> a);

// Row-major coordinates of points in a space with a flat metric.
struct PackedPoints {
  std::vector<double> rows;
  std::size_t dim = 0;
  std::size_t size() const { return dim == 0 ? 0 : rows.size() / dim; }
};

PackedPoints pack(std::span<const Point> points, std::size_t dim);

// Distances from x to every point in `a`, using the vector kernels when the space allows.
void distances_to(const MetricSpace& space, const Point& x, std::span<const Point> a,
                  std::vector<double>& out);

PointSet make_set(const MetricSpace& space, std::vector<Point> points);

}  // namespace ofl
