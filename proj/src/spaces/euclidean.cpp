#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "ofl/min_enclosing_ball.hpp"
#include "ofl/spaces.hpp"

namespace ofl {

EuclideanSpace::EuclideanSpace(std::size_t n, double radius, std::vector<double> center)
    : n_(n), radius_(radius), center_(std::move(center)) {
  if (n_ == 0) throw UsageError("euclidean: dimension must be positive");
  if (!(radius_ > 0.0)) throw UsageError("euclidean: radius must be positive");
  if (center_.empty()) center_.assign(n_, 0.0);
  if (center_.size() != n_) throw UsageError("euclidean: center has wrong dimension");
  id_ = "euclidean" + std::to_string(n_) + "[r=" + format_number(radius_) + "]";
}

double EuclideanSpace::distance(const Point& x, const Point& y) const {
  return kernels::distance(kernels::Metric::L2, x.coords, y.coords);
}

bool EuclideanSpace::contains(const Point& p, double tol) const {
  if (p.coords.size() != n_) return false;
  return kernels::distance(kernels::Metric::L2, p.coords, center_) <= radius_ + tol;
}

Point EuclideanSpace::sample(Rng& rng) const {
  auto u = spaces_detail::gaussian_direction(n_, rng);
  const double s = radius_ * std::pow(uniform(rng, 0.0, 1.0), 1.0 / static_cast<double>(n_));
  for (std::size_t i = 0; i < n_; ++i) u[i] = center_[i] + s * u[i];
  return Point(std::move(u));
}

Point EuclideanSpace::sample_ball(const Point& c, double r, Rng& rng) const {
  std::vector<double> p(n_);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto u = spaces_detail::gaussian_direction(n_, rng);
    const bool sphere = uniform(rng, 0.0, 1.0) < 1.0 / 3.0;
    const double s =
        sphere ? r : r * std::pow(uniform(rng, 0.0, 1.0), 1.0 / static_cast<double>(n_));
    for (std::size_t i = 0; i < n_; ++i) p[i] = c.coords[i] + s * u[i];
    if (contains(Point(p), 0.0)) return Point(p);
  }
  const double d = kernels::distance(kernels::Metric::L2, p, center_);
  for (std::size_t i = 0; i < n_; ++i) p[i] = center_[i] + (p[i] - center_[i]) * (radius_ / d);
  return Point(std::move(p));
}

std::vector<Point> EuclideanSpace::anchors() const {
  std::vector<Point> out{Point(center_)};
  for (std::size_t i = 0; i < n_; ++i) {
    for (double s : {0.5, -0.5}) {
      auto c = center_;
      c[i] += s * radius_;
      out.emplace_back(std::move(c));
    }
  }
  return out;
}

ReferenceConstants EuclideanSpace::reference_constants() const {
  const double n = static_cast<double>(n_);
  if (n_ == 1) return {2.0, 0.5};
  return {std::sqrt(2.0), std::sqrt(n / (2.0 * (n + 1.0)))};
}

CoverDescriptor EuclideanSpace::cover(const PointSet& a) const {
  std::vector<std::vector<double>> pts;
  for (const auto& p : a.points) pts.push_back(p.coords);
  const auto ball = min_enclosing_ball(pts);
  if (ball.radius == 0.0) return spaces_detail::point_cover(*this, a.points.front());
  const std::size_t extra = n_ == 2 ? 112 : 64 * n_;
  return spaces_detail::ball_family_cover(*this, a, ball.center, ball.radius,
                                          spaces_detail::probe_directions(n_, extra));
}

CenterResult EuclideanSpace::center(const PointSet& a) const {
  std::vector<std::vector<double>> pts;
  for (const auto& p : a.points) pts.push_back(p.coords);
  const auto ball = min_enclosing_ball(pts);
  Point z(ball.center);
  const double radius = sup_distance(*this, z, std::span<const Point>(a.points));
  return {std::move(z), radius};
}

std::optional<RegularityResult> EuclideanSpace::regularity(const Point& x, const Point& y,
                                                           double r, double k, double mu) const {
  return spaces_detail::euclidean_lens(x.coords, y.coords, (1.0 + mu) * r, k * (1.0 + mu) * r, r);
}

std::string EuclideanSpace::describe() const {
  return "euclidean n=" + std::to_string(n_) + " radius=" + format_number(radius_);
}

}  // namespace ofl
