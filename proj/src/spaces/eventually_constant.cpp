#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "ofl/spaces.hpp"

namespace ofl {

EventuallyConstSeqSpace::EventuallyConstSeqSpace(std::size_t max_prefix, double bound)
    : max_prefix_(max_prefix), bound_(bound) {
  if (!(bound_ > 0.0)) throw UsageError("ecs: bound must be positive");
  id_ = "ecs[prefix=" + std::to_string(max_prefix_) + ",bound=" + format_number(bound_) + "]";
}

Point EventuallyConstSeqSpace::normalize(Point p) {
  while (!p.coords.empty() && p.coords.back() == p.tail) p.coords.pop_back();
  return p;
}

double EventuallyConstSeqSpace::distance(const Point& x, const Point& y) const {
  const std::size_t common = std::min(x.coords.size(), y.coords.size());
  double best = std::abs(x.tail - y.tail);
  if (common > 0) {
    best = std::max(best, kernels::active().linf(x.coords.data(), y.coords.data(), common));
  }
  if (x.coords.size() > common) {
    best = std::max(best, kernels::active().linf_to_constant(x.coords.data() + common, y.tail,
                                                             x.coords.size() - common));
  }
  if (y.coords.size() > common) {
    best = std::max(best, kernels::active().linf_to_constant(y.coords.data() + common, x.tail,
                                                             y.coords.size() - common));
  }
  return best;
}

bool EventuallyConstSeqSpace::contains(const Point& p, double) const {
  if (!std::isfinite(p.tail)) return false;
  return std::all_of(p.coords.begin(), p.coords.end(), [](double v) { return std::isfinite(v); });
}

Point EventuallyConstSeqSpace::sample(Rng& rng) const {
  const std::size_t len = rng() % (max_prefix_ + 1);
  std::vector<double> prefix(len);
  for (auto& v : prefix) v = uniform(rng, -bound_, bound_);
  return Point(std::move(prefix), uniform(rng, -bound_, bound_));
}

Point EventuallyConstSeqSpace::sample_ball(const Point& c, double r, Rng& rng) const {
  const std::size_t len = std::max(c.coords.size(), rng() % (max_prefix_ + 1));
  std::vector<double> prefix(len);
  for (std::size_t i = 0; i < len; ++i) {
    const double base = i < c.coords.size() ? c.coords[i] : c.tail;
    prefix[i] = base + uniform(rng, -r, r);
  }
  double tail = c.tail + uniform(rng, -r, r);
  if (uniform(rng, 0.0, 1.0) < 1.0 / 3.0) {
    const std::size_t j = rng() % (len + 1);
    const double s = (rng() & 1ULL) ? r : -r;
    if (j == len) {
      tail = c.tail + s;
    } else {
      prefix[j] = (j < c.coords.size() ? c.coords[j] : c.tail) + s;
    }
  }
  return Point(std::move(prefix), tail);
}

std::vector<Point> EventuallyConstSeqSpace::anchors() const {
  return {constant(0.0), constant(bound_), constant(-bound_), Point({bound_}, 0.0),
          Point({0.0, bound_}, 0.0)};
}

double EventuallyConstSeqSpace::diameter_bound() const { return INFINITY; }

CoverDescriptor EventuallyConstSeqSpace::cover(const PointSet& a) const {
  std::size_t len = 0;
  for (const auto& p : a.points) len = std::max(len, p.coords.size());
  CoverDescriptor out;
  out.space_id = id_;
  out.kind = CoverDescriptor::Kind::Box;
  out.has_tail = true;
  out.lo.assign(len, INFINITY);
  out.hi.assign(len, -INFINITY);
  out.tail_lo = INFINITY;
  out.tail_hi = -INFINITY;
  for (const auto& p : a.points) {
    for (std::size_t i = 0; i < len; ++i) {
      const double v = i < p.coords.size() ? p.coords[i] : p.tail;
      out.lo[i] = std::min(out.lo[i], v);
      out.hi[i] = std::max(out.hi[i], v);
    }
    out.tail_lo = std::min(out.tail_lo, p.tail);
    out.tail_hi = std::max(out.tail_hi, p.tail);
  }
  return out;
}

CenterResult EventuallyConstSeqSpace::center(const PointSet& a) const {
  const CoverDescriptor box = cover(a);
  std::vector<double> prefix(box.lo.size());
  for (std::size_t i = 0; i < prefix.size(); ++i) prefix[i] = 0.5 * (box.lo[i] + box.hi[i]);
  Point z = normalize(Point(std::move(prefix), 0.5 * (box.tail_lo + box.tail_hi)));
  const double radius = sup_distance(*this, z, std::span<const Point>(a.points));
  return {std::move(z), radius};
}

std::string EventuallyConstSeqSpace::describe() const {
  return "ecs max_prefix=" + std::to_string(max_prefix_) + " bound=" + format_number(bound_);
}

}  // namespace ofl
