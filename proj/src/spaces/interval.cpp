#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "common.hpp"
#include "ofl/spaces.hpp"

namespace ofl {

std::optional<RegularityResult> interval_lens(double x, double y, double r1, double r2, double lo,
                                              double hi, double r) {
  const double left = std::max({x - r1, y - r2, lo});
  const double right = std::min({x + r1, y + r2, hi});
  RegularityResult out;
  if (left > right) {
    out.z = Point::scalar(x);
    out.alpha = 0.0;
    return out;
  }
  out.z = Point::scalar(0.5 * (left + right));
  out.alpha = 0.5 * (right - left) / r;
  if (!(out.alpha < 1.0)) return std::nullopt;
  return out;
}

IntervalSpace::IntervalSpace(double a, double b) : a_(a), b_(b) {
  if (!(a < b)) throw UsageError("interval requires a < b");
  id_ = "interval[" + format_number(a) + "," + format_number(b) + "]";
}

double IntervalSpace::distance(const Point& x, const Point& y) const {
  return std::abs(x.coords[0] - y.coords[0]);
}

bool IntervalSpace::contains(const Point& p, double tol) const {
  return p.coords.size() == 1 && p.coords[0] >= a_ - tol && p.coords[0] <= b_ + tol;
}

Point IntervalSpace::sample(Rng& rng) const {
  const double v = uniform(rng, a_, b_);
  const bool q = (rng() & 1ULL) != 0;
  return Point::scalar(v, q);
}

Point IntervalSpace::sample_ball(const Point& c, double r, Rng& rng) const {
  const double lo = std::max(a_, c.coords[0] - r);
  const double hi = std::min(b_, c.coords[0] + r);
  const double mode = uniform(rng, 0.0, 1.0);
  if (mode < 1.0 / 6.0) return Point::scalar(lo);
  if (mode < 1.0 / 3.0) return Point::scalar(hi);
  return Point::scalar(uniform(rng, lo, hi));
}

std::vector<Point> IntervalSpace::anchors() const {
  std::vector<Point> out;
  for (int i = 0; i <= 16; ++i) {
    out.push_back(Point::scalar(a_ + (b_ - a_) * static_cast<double>(i) / 16.0, true));
  }
  return out;
}

CoverDescriptor IntervalSpace::cover(const PointSet& a) const {
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& p : a.points) {
    lo = std::min(lo, p.coords[0]);
    hi = std::max(hi, p.coords[0]);
  }
  if (lo == hi) return spaces_detail::point_cover(*this, Point::scalar(lo));
  CoverDescriptor out;
  out.space_id = id_;
  out.kind = CoverDescriptor::Kind::Interval;
  out.lo = {lo};
  out.hi = {hi};
  return out;
}

CenterResult IntervalSpace::center(const PointSet& a) const {
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& p : a.points) {
    lo = std::min(lo, p.coords[0]);
    hi = std::max(hi, p.coords[0]);
  }
  return {Point::scalar(0.5 * (lo + hi)), 0.5 * (hi - lo)};
}

std::optional<RegularityResult> IntervalSpace::regularity(const Point& x, const Point& y,
                                                          double r, double k, double mu) const {
  return interval_lens(x.coords[0], y.coords[0], (1.0 + mu) * r, k * (1.0 + mu) * r, a_, b_, r);
}

std::string IntervalSpace::describe() const {
  return "interval a=" + format_number(a_) + " b=" + format_number(b_);
}

}  // namespace ofl
