#include "ofl/metric_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ofl {
namespace {

void require_nonempty(std::span<const Point> a, const char* op) {
  if (a.empty()) throw std::domain_error(std::string(op) + ": empty point set");
}

void require_same_space(const MetricSpace& space, const PointSet& a) {
  if (a.space_id != space.id()) {
    throw UsageError("point set belongs to '" + a.space_id + "', not '" + space.id() + "'");
  }
}

bool flat_points(const MetricSpace& space, const Point& x, std::span<const Point> a) {
  if (!space.flat_metric()) return false;
  const std::size_t dim = x.coords.size();
  return std::all_of(a.begin(), a.end(),
                     [dim](const Point& p) { return p.coords.size() == dim; });
}

}  // namespace

PackedPoints pack(std::span<const Point> points, std::size_t dim) {
  PackedPoints out;
  out.dim = dim;
  out.rows.reserve(points.size() * dim);
  for (const auto& p : points) out.rows.insert(out.rows.end(), p.coords.begin(), p.coords.end());
  return out;
}

double sup_distance(const MetricSpace& space, const Point& x, std::span<const Point> a) {
  require_nonempty(a, "sup_distance");
  if (flat_points(space, x, a)) {
    thread_local PackedPoints buf;
    buf.dim = x.coords.size();
    buf.rows.clear();
    for (const auto& p : a) buf.rows.insert(buf.rows.end(), p.coords.begin(), p.coords.end());
    return kernels::max_distance_rows(*space.flat_metric(), x.coords, buf.rows, buf.dim);
  }
  double best = 0.0;
  for (const auto& p : a) best = std::max(best, space.distance(x, p));
  return best;
}

void distances_to(const MetricSpace& space, const Point& x, std::span<const Point> a,
                  std::vector<double>& out) {
  out.resize(a.size());
  if (a.empty()) return;
  if (flat_points(space, x, a)) {
    thread_local std::vector<double> rows;
    rows.clear();
    for (const auto& p : a) rows.insert(rows.end(), p.coords.begin(), p.coords.end());
    kernels::distances_to_rows(*space.flat_metric(), x.coords, rows, x.coords.size(), out);
    return;
  }
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = space.distance(x, a[i]);
}

double diameter(const MetricSpace& space, std::span<const Point> a) {
  require_nonempty(a, "diameter");
  double best = 0.0;
  if (flat_points(space, a.front(), a)) {
    const std::size_t dim = a.front().coords.size();
    const PackedPoints packed = pack(a, dim);
    const auto metric = *space.flat_metric();
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      std::span<const double> rest(packed.rows.data() + (i + 1) * dim,
                                   (a.size() - i - 1) * dim);
      best = std::max(best, kernels::max_distance_rows(metric, a[i].coords, rest, dim));
    }
    return best;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) best = std::max(best, space.distance(a[i], a[j]));
  }
  return best;
}

double inner_radius(const MetricSpace& space, std::span<const Point> a) {
  require_nonempty(a, "inner_radius");
  double best = INFINITY;
  if (flat_points(space, a.front(), a)) {
    const std::size_t dim = a.front().coords.size();
    const PackedPoints packed = pack(a, dim);
    const auto metric = *space.flat_metric();
    for (const auto& x : a) {
      best = std::min(best, kernels::max_distance_rows(metric, x.coords, packed.rows, dim));
    }
    return best;
  }
  for (const auto& x : a) {
    double far = 0.0;
    for (const auto& p : a) {
      far = std::max(far, space.distance(x, p));
      if (far >= best) break;
    }
    best = std::min(best, far);
  }
  return best;
}

double sup_distance(const MetricSpace& space, const Point& x, const PointSet& a) {
  require_same_space(space, a);
  return sup_distance(space, x, std::span<const Point>(a.points));
}

double diameter(const MetricSpace& space, const PointSet& a) {
  require_same_space(space, a);
  return diameter(space, std::span<const Point>(a.points));
}

double inner_radius(const MetricSpace& space, const PointSet& a) {
  require_same_space(space, a);
  return inner_radius(space, std::span<const Point>(a.points));
}

CoverDescriptor admissible_cover(const MetricSpace& space, const PointSet& a) {
  require_same_space(space, a);
  require_nonempty(a.points, "admissible_cover");
  if (!space.has_cover_oracle()) {
    throw UnsupportedOperation("space '" + space.id() + "' has no cover oracle");
  }
  return space.cover(a);
}

CenterResult chebyshev_center(const MetricSpace& space, const PointSet& a) {
  require_same_space(space, a);
  require_nonempty(a.points, "chebyshev_center");
  if (!space.has_center_oracle()) {
    throw UnsupportedOperation("space '" + space.id() + "' has no center oracle");
  }
  return space.center(a);
}

std::optional<RegularityResult> regularity_oracle(const MetricSpace& space, const Point& x,
                                                  const Point& y, double r, double k, double mu) {
  if (!(r > 0.0)) throw std::domain_error("regularity_oracle: r must be positive");
  if (!(k >= 1.0)) throw std::domain_error("regularity_oracle: k must be at least 1");
  if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("regularity_oracle: mu must lie in (0,1)");
  const double d = space.distance(x, y);
  if (d < (1.0 - mu) * r * (1.0 - 1e-12)) {
    throw std::domain_error("regularity_oracle: d(x,y) < (1-mu) r");
  }
  if (!space.has_regularity_oracle()) {
    throw UnsupportedOperation("space '" + space.id() + "' has no regularity oracle");
  }
  return space.regularity(x, y, r, k, mu);
}

PointSet make_set(const MetricSpace& space, std::vector<Point> points) {
  return PointSet{space.id(), std::move(points)};
}

}  // namespace ofl
