#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "ofl/spaces.hpp"

namespace ofl {

MaxNormSpace::MaxNormSpace(std::vector<double> lo, std::vector<double> hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.empty() || lo_.size() != hi_.size()) throw UsageError("maxnorm: bad bounds");
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (!(lo_[i] < hi_[i])) throw UsageError("maxnorm: bounds need lo < hi on every axis");
  }
  id_ = "maxnorm" + std::to_string(lo_.size()) + "[";
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (i) id_ += "x";
    id_ += format_number(lo_[i]) + "," + format_number(hi_[i]);
  }
  id_ += "]";
}

MaxNormSpace MaxNormSpace::cube(std::size_t n, double lo, double hi) {
  return MaxNormSpace(std::vector<double>(n, lo), std::vector<double>(n, hi));
}

double MaxNormSpace::distance(const Point& x, const Point& y) const {
  return kernels::distance(kernels::Metric::Linf, x.coords, y.coords);
}

bool MaxNormSpace::contains(const Point& p, double tol) const {
  if (p.coords.size() != lo_.size()) return false;
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (p.coords[i] < lo_[i] - tol || p.coords[i] > hi_[i] + tol) return false;
  }
  return true;
}

Point MaxNormSpace::sample(Rng& rng) const {
  std::vector<double> c(lo_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = uniform(rng, lo_[i], hi_[i]);
  return Point(std::move(c));
}

Point MaxNormSpace::sample_ball(const Point& c, double r, Rng& rng) const {
  const std::size_t n = lo_.size();
  std::vector<double> lo(n), hi(n), out(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = std::max(lo_[i], c.coords[i] - r);
    hi[i] = std::min(hi_[i], c.coords[i] + r);
  }
  const double mode = uniform(rng, 0.0, 1.0);
  if (mode < 1.0 / 6.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (rng() & 1ULL) ? hi[i] : lo[i];
    return Point(std::move(out));
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = uniform(rng, lo[i], hi[i]);
  if (mode < 1.0 / 3.0) {
    const std::size_t j = rng() % n;
    out[j] = (rng() & 1ULL) ? hi[j] : lo[j];
  }
  return Point(std::move(out));
}

std::vector<Point> MaxNormSpace::anchors() const {
  const std::size_t n = lo_.size();
  std::vector<Point> out;
  if (n <= 4) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<double> c(n);
      std::size_t rest = code;
      for (std::size_t i = 0; i < n; ++i) {
        c[i] = lo_[i] + (hi_[i] - lo_[i]) * 0.5 * static_cast<double>(rest % 3);
        rest /= 3;
      }
      out.emplace_back(std::move(c));
    }
    return out;
  }
  std::vector<double> mid(n);
  for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (lo_[i] + hi_[i]);
  out.emplace_back(mid);
  for (std::size_t i = 0; i < n; ++i) {
    for (double v : {lo_[i], hi_[i]}) {
      auto c = mid;
      c[i] = v;
      out.emplace_back(std::move(c));
    }
  }
  return out;
}

double MaxNormSpace::diameter_bound() const {
  double m = 0.0;
  for (std::size_t i = 0; i < lo_.size(); ++i) m = std::max(m, hi_[i] - lo_[i]);
  return m;
}

ReferenceConstants MaxNormSpace::reference_constants() const {
  if (lo_.size() == 1) return {2.0, 0.5};
  return {1.0, 0.5};
}

CoverDescriptor MaxNormSpace::cover(const PointSet& a) const {
  const std::size_t n = lo_.size();
  std::vector<double> lo(n, INFINITY), hi(n, -INFINITY);
  for (const auto& p : a.points) {
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], p.coords[i]);
      hi[i] = std::max(hi[i], p.coords[i]);
    }
  }
  if (lo == hi) return spaces_detail::point_cover(*this, Point(lo));
  CoverDescriptor out;
  out.space_id = id_;
  out.kind = CoverDescriptor::Kind::Box;
  out.lo = std::move(lo);
  out.hi = std::move(hi);
  return out;
}

CenterResult MaxNormSpace::center(const PointSet& a) const {
  const std::size_t n = lo_.size();
  std::vector<double> lo(n, INFINITY), hi(n, -INFINITY);
  for (const auto& p : a.points) {
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], p.coords[i]);
      hi[i] = std::max(hi[i], p.coords[i]);
    }
  }
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = 0.5 * (lo[i] + hi[i]);
  Point z(std::move(c));
  const double radius = sup_distance(*this, z, std::span<const Point>(a.points));
  return {std::move(z), radius};
}

std::optional<RegularityResult> MaxNormSpace::regularity(const Point& x, const Point& y,
                                                         double r, double k, double mu) const {
  const double r1 = (1.0 + mu) * r;
  const double r2 = k * (1.0 + mu) * r;
  if (lo_.size() == 1) return interval_lens(x.coords[0], y.coords[0], r1, r2, lo_[0], hi_[0], r);
  if (k > 1.0) return std::nullopt;
  const std::size_t n = lo_.size();
  std::vector<double> z(n);
  double half = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double left = std::max({x.coords[i] - r1, y.coords[i] - r2, lo_[i]});
    const double right = std::min({x.coords[i] + r1, y.coords[i] + r2, hi_[i]});
    if (left > right) return RegularityResult{x, 0.0};
    z[i] = 0.5 * (left + right);
    half = std::max(half, 0.5 * (right - left));
  }
  RegularityResult out{Point(std::move(z)), half / r};
  if (!(out.alpha < 1.0)) return std::nullopt;
  return out;
}

std::string MaxNormSpace::describe() const { return "maxnorm n=" + std::to_string(lo_.size()); }

}  // namespace ofl
