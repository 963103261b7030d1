#include <algorithm>
#include <cmath>
#include <random>

#include "common.hpp"
#include "ofl/min_enclosing_ball.hpp"
#include "ofl/spaces.hpp"

namespace ofl {

LpSpace::LpSpace(std::size_t n, double p, double radius) : n_(n), p_(p), radius_(radius) {
  if (n_ == 0) throw UsageError("lp: dimension must be positive");
  if (!(p_ >= 1.0) || std::isinf(p_)) throw UsageError("lp: exponent must lie in [1, inf)");
  if (!(radius_ > 0.0)) throw UsageError("lp: radius must be positive");
  id_ = "lp" + std::to_string(n_) + "[p=" + format_number(p_) + ",r=" + format_number(radius_) +
        "]";
}

double LpSpace::norm(const std::vector<double>& v) const {
  if (p_ == 1.0) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
  }
  if (p_ == 2.0) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p_);
  return std::pow(s, 1.0 / p_);
}

std::optional<kernels::Metric> LpSpace::flat_metric() const {
  if (p_ == 1.0) return kernels::Metric::L1;
  if (p_ == 2.0) return kernels::Metric::L2;
  return std::nullopt;
}

double LpSpace::distance(const Point& x, const Point& y) const {
  if (p_ == 1.0) return kernels::distance(kernels::Metric::L1, x.coords, y.coords);
  if (p_ == 2.0) return kernels::distance(kernels::Metric::L2, x.coords, y.coords);
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += std::pow(std::abs(x.coords[i] - y.coords[i]), p_);
  return std::pow(s, 1.0 / p_);
}

bool LpSpace::contains(const Point& p, double tol) const {
  return p.coords.size() == n_ && norm(p.coords) <= radius_ + tol;
}

std::vector<double> LpSpace::unit_ball_sample(Rng& rng, bool on_sphere) const {
  std::gamma_distribution<double> gamma(1.0 / p_, 1.0);
  std::vector<double> v(n_);
  double s = 0.0;
  do {
    s = 0.0;
    for (auto& x : v) {
      const double g = gamma(rng);
      x = std::pow(g, 1.0 / p_) * ((rng() & 1ULL) ? 1.0 : -1.0);
      s += g;
    }
  } while (s <= 0.0);
  if (on_sphere) {
    const double scale = 1.0 / norm(v);
    for (auto& x : v) x *= scale;
    return v;
  }
  std::exponential_distribution<double> expo(1.0);
  const double scale = 1.0 / std::pow(s + expo(rng), 1.0 / p_);
  for (auto& x : v) x *= scale;
  return v;
}

Point LpSpace::sample(Rng& rng) const {
  auto v = unit_ball_sample(rng, false);
  for (auto& x : v) x *= radius_;
  return Point(std::move(v));
}

Point LpSpace::sample_ball(const Point& c, double r, Rng& rng) const {
  std::vector<double> q(n_);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const bool sphere = uniform(rng, 0.0, 1.0) < 1.0 / 3.0;
    const auto u = unit_ball_sample(rng, sphere);
    for (std::size_t i = 0; i < n_; ++i) q[i] = c.coords[i] + r * u[i];
    if (norm(q) <= radius_) return Point(q);
  }
  // pull q back along [c, q]
  double lo = 0.0, hi = 1.0;
  std::vector<double> m(n_);
  for (int it = 0; it < 60; ++it) {
    const double t = 0.5 * (lo + hi);
    for (std::size_t i = 0; i < n_; ++i) m[i] = c.coords[i] + t * (q[i] - c.coords[i]);
    (norm(m) <= radius_ ? lo : hi) = t;
  }
  for (std::size_t i = 0; i < n_; ++i) m[i] = c.coords[i] + lo * (q[i] - c.coords[i]);
  return Point(std::move(m));
}

std::vector<Point> LpSpace::anchors() const {
  std::vector<Point> out{Point(std::vector<double>(n_, 0.0))};
  for (std::size_t i = 0; i < n_; ++i) {
    std::vector<double> e(n_, 0.0);
    e[i] = radius_;
    out.emplace_back(e);
  }
  return out;
}

ReferenceConstants LpSpace::reference_constants() const {
  if (p_ == 2.0) {
    const double n = static_cast<double>(n_);
    if (n_ == 1) return {2.0, 0.5};
    return {std::sqrt(2.0), std::sqrt(n / (2.0 * (n + 1.0)))};
  }
  if (n_ == 1) return {2.0, 0.5};
  return {};
}

CoverDescriptor LpSpace::cover(const PointSet& a) const {
  const CenterResult c = center(a);
  if (c.radius == 0.0) return spaces_detail::point_cover(*this, a.points.front());
  auto dirs = spaces_detail::probe_directions(n_, 32 * n_);
  for (auto& u : dirs) {
    const double s = 1.0 / norm(u);
    for (auto& x : u) x *= s;
  }
  return spaces_detail::ball_family_cover(*this, a, c.point.coords, c.radius, dirs);
}

CenterResult LpSpace::center(const PointSet& a) const {
  const auto& pts = a.points;
  if (p_ == 2.0) {
    std::vector<std::vector<double>> raw;
    for (const auto& p : pts) raw.push_back(p.coords);
    Point z(min_enclosing_ball(raw).center);
    const double radius = sup_distance(*this, z, std::span<const Point>(pts));
    return {std::move(z), radius};
  }
  // Badoiu-Clarkson steps toward the farthest point.
  std::vector<double> c = pts.front().coords;
  Point best(c);
  double best_r = sup_distance(*this, best, std::span<const Point>(pts));
  for (int i = 1; i <= 2000; ++i) {
    const Point cur(c);
    std::size_t far = 0;
    double far_d = -1.0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double d = distance(cur, pts[j]);
      if (d > far_d) {
        far_d = d;
        far = j;
      }
    }
    if (far_d < best_r || (far_d == best_r && lex_less(cur, best))) {
      best_r = far_d;
      best = cur;
    }
    const double step = 1.0 / static_cast<double>(i + 1);
    for (std::size_t k = 0; k < n_; ++k) c[k] += step * (pts[far].coords[k] - c[k]);
  }
  return {best, best_r};
}

std::optional<RegularityResult> LpSpace::regularity(const Point& x, const Point& y, double r,
                                                    double k, double mu) const {
  if (p_ != 2.0) return MetricSpace::regularity(x, y, r, k, mu);
  return spaces_detail::euclidean_lens(x.coords, y.coords, (1.0 + mu) * r, k * (1.0 + mu) * r, r);
}

std::string LpSpace::describe() const {
  return "lp n=" + std::to_string(n_) + " p=" + format_number(p_) +
         " radius=" + format_number(radius_);
}

}  // namespace ofl
