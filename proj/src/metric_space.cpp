#include "ofl/metric_space.hpp"

#include <algorithm>

namespace ofl {

std::string_view space_kind_name(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Interval: return "interval";
    case SpaceKind::MaxNorm: return "maxnorm";
    case SpaceKind::Euclidean: return "euclidean";
    case SpaceKind::Lp: return "lp";
    case SpaceKind::Tree: return "tree";
    case SpaceKind::EventuallyConstant: return "ecs";
  }
  return "unknown";
}

std::string_view cover_kind_name(CoverDescriptor::Kind kind) {
  switch (kind) {
    case CoverDescriptor::Kind::Point: return "point";
    case CoverDescriptor::Kind::Interval: return "interval";
    case CoverDescriptor::Kind::Box: return "box";
    case CoverDescriptor::Kind::BallFamily: return "ball_family";
  }
  return "unknown";
}

bool CoverDescriptor::contains(const MetricSpace& space, const Point& p, double tol) const {
  switch (kind) {
    case Kind::Point:
      return space.distance(p, point) <= tol;
    case Kind::Interval:
      return !p.coords.empty() && p.coords[0] >= lo[0] - tol && p.coords[0] <= hi[0] + tol;
    case Kind::Box: {
      if (!has_tail && p.coords.size() != lo.size()) return false;
      const std::size_t n = std::max(lo.size(), p.coords.size());
      for (std::size_t i = 0; i < n; ++i) {
        const double v = i < p.coords.size() ? p.coords[i] : p.tail;
        const double l = i < lo.size() ? lo[i] : tail_lo;
        const double h = i < hi.size() ? hi[i] : tail_hi;
        if (v < l - tol || v > h + tol) return false;
      }
      if (has_tail && (p.tail < tail_lo - tol || p.tail > tail_hi + tol)) return false;
      return true;
    }
    case Kind::BallFamily: {
      if (!space.contains(p, tol)) return false;
      for (const auto& b : balls) {
        if (space.distance(b.center, p) > b.radius + tol) return false;
      }
      return true;
    }
  }
  return false;
}

CoverDescriptor MetricSpace::cover(const PointSet&) const {
  throw UnsupportedOperation("space '" + id() + "' has no cover oracle");
}

CenterResult MetricSpace::center(const PointSet&) const {
  throw UnsupportedOperation("space '" + id() + "' has no center oracle");
}

std::optional<RegularityResult> MetricSpace::regularity(const Point&, const Point&, double,
                                                        double, double) const {
  throw UnsupportedOperation("space '" + id() + "' has no regularity oracle");
}

}  // namespace ofl
