#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ofl/kernels.hpp"
#include "ofl/point.hpp"

namespace ofl {

enum class SpaceKind { Interval, MaxNorm, Euclidean, Lp, Tree, EventuallyConstant };

std::string_view space_kind_name(SpaceKind kind);

struct RegularityResult {
  Point z;
  double alpha = 0.0;
};

struct ReferenceConstants {
  std::optional<double> kappa;
  std::optional<double> normal_coeff;
};

struct CenterResult {
  Point point;
  double radius = 0.0;
};

class MetricSpace;

// Representation of cov(A).
//   Point:      the single point `point`
//   Interval:   [lo[0], hi[0]]
//   Box:        per-axis [lo[i], hi[i]]; with has_tail, coordinates past lo.size()
//               and the tail constant must lie in [tail_lo, tail_hi]
//   BallFamily: intersection of `balls` with the domain. Every ball contains A, so
//               the set is a superset of cov(A) that shrinks as balls are added.
struct CoverDescriptor {
  enum class Kind { Point, Interval, Box, BallFamily };

  std::string space_id;
  Kind kind = Kind::Point;
  Point point;
  std::vector<double> lo, hi;
  bool has_tail = false;
  double tail_lo = 0.0, tail_hi = 0.0;
  std::vector<BallSpec> balls;

  bool contains(const MetricSpace& space, const Point& p, double tol) const;
};

std::string_view cover_kind_name(CoverDescriptor::Kind kind);

class MetricSpace {
 public:
  virtual ~MetricSpace() = default;

  virtual const std::string& id() const = 0;
  virtual SpaceKind kind() const = 0;
  virtual std::size_t dimension() const { return 1; }

  virtual double distance(const Point& a, const Point& b) const = 0;
  virtual bool contains(const Point& p, double tol = 1e-12) const = 0;

  virtual Point sample(Rng& rng) const = 0;
  // A point of B(c, r) intersected with the domain; about a third land on the sphere.
  virtual Point sample_ball(const Point& c, double r, Rng& rng) const = 0;
  // Deterministic probe points included in every sampled pair set.
  virtual std::vector<Point> anchors() const { return {}; }
  // Upper bound on the domain diameter; +inf when unbounded.
  virtual double diameter_bound() const = 0;

  virtual ReferenceConstants reference_constants() const { return {}; }

  // When set, distance(a, b) == kernels::distance(metric, a.coords, b.coords).
  virtual std::optional<kernels::Metric> flat_metric() const { return std::nullopt; }

  virtual bool has_cover_oracle() const { return false; }
  virtual CoverDescriptor cover(const PointSet& a) const;
  virtual bool has_center_oracle() const { return false; }
  virtual CenterResult center(const PointSet& a) const;
  virtual bool has_regularity_oracle() const { return false; }
  // B(x,(1+mu)r) ∩ B(y,k(1+mu)r) ⊂ B(z, alpha r) with alpha < 1, or nullopt.
  virtual std::optional<RegularityResult> regularity(const Point& x, const Point& y, double r,
                                                     double k, double mu) const;

  // One-line parameter summary for reports.
  virtual std::string describe() const = 0;
};

using MetricSpaceHandle = std::shared_ptr<const MetricSpace>;

}  // namespace ofl
