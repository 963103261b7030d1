#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "ofl/metric_core.hpp"
#include "ofl/metric_space.hpp"

namespace ofl::spaces_detail {

inline std::vector<double> gaussian_direction(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n);
  double s = 0.0;
  do {
    s = 0.0;
    for (auto& x : v) {
      x = g(rng);
      s += x * x;
    }
  } while (s < 1e-24);
  const double inv = 1.0 / std::sqrt(s);
  for (auto& x : v) x *= inv;
  return v;
}

// Deterministic unit directions: the 2n signed axes, then `extra` pseudo-random ones.
inline std::vector<std::vector<double>> probe_directions(std::size_t n, std::size_t extra) {
  std::vector<std::vector<double>> dirs;
  if (n == 2) {
    const std::size_t m = 16 + extra;
    for (std::size_t i = 0; i < m; ++i) {
      const double t = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(m);
      dirs.push_back({std::cos(t), std::sin(t)});
    }
    return dirs;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (double s : {1.0, -1.0}) {
      std::vector<double> e(n, 0.0);
      e[i] = s;
      dirs.push_back(e);
    }
  }
  if (n == 1) return dirs;
  Rng rng(0x5eed5eedULL + n);
  for (std::size_t i = 0; i < extra; ++i) dirs.push_back(gaussian_direction(n, rng));
  return dirs;
}

// Smallest ball around the segment [x, y] holding B(x, r1) ∩ B(y, r2) in Euclidean space.
inline std::optional<RegularityResult> euclidean_lens(const std::vector<double>& x,
                                                      const std::vector<double>& y, double r1,
                                                      double r2, double r) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (y[i] - x[i]) * (y[i] - x[i]);
  const double d = std::sqrt(d2);
  RegularityResult out;
  double rho = 0.0;
  if (d > r1 + r2) {
    out.z = Point(x);
    out.alpha = 0.0;
    return out;
  }
  if (d == 0.0) {
    out.z = Point(x);
    rho = std::min(r1, r2);
  } else {
    const double a = (d2 + r1 * r1 - r2 * r2) / (2.0 * d);
    if (a <= 0.0) {
      out.z = Point(x);
      rho = r1;
    } else if (a >= d) {
      out.z = Point(y);
      rho = r2;
    } else {
      std::vector<double> z(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + (a / d) * (y[i] - x[i]);
      out.z = Point(std::move(z));
      rho = std::sqrt(std::max(0.0, r1 * r1 - a * a));
    }
  }
  out.alpha = rho / r;
  if (!(out.alpha < 1.0)) return std::nullopt;
  return out;
}

// Witness balls B(w, D(w, A)) for w = c - t u over the given directions and scales, kept
// when w lies in the domain. Every such ball contains A, so their intersection contains cov(A).
inline CoverDescriptor ball_family_cover(const MetricSpace& space, const PointSet& a,
                                         const std::vector<double>& c, double rho,
                                         const std::vector<std::vector<double>>& dirs) {
  CoverDescriptor out;
  out.space_id = space.id();
  out.kind = CoverDescriptor::Kind::BallFamily;
  auto add = [&](const Point& w) {
    if (!space.contains(w, 1e-12)) return;
    out.balls.push_back({w, sup_distance(space, w, std::span<const Point>(a.points))});
  };
  add(Point(c));
  for (const auto& p : a.points) add(p);
  auto all_dirs = dirs;
  // in the plane, the outward normals of the chords of A carve polygons exactly
  if (c.size() == 2 && a.points.size() <= 32) {
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      for (std::size_t j = i + 1; j < a.points.size(); ++j) {
        const auto& p = a.points[i].coords;
        const auto& q = a.points[j].coords;
        const double nx = q[1] - p[1], ny = p[0] - q[0];
        const double len = std::hypot(nx, ny);
        if (len == 0.0) continue;
        all_dirs.push_back({nx / len, ny / len});
        all_dirs.push_back({-nx / len, -ny / len});
      }
    }
  }
  for (const auto& u : all_dirs) {
    for (double t : {1.0, 4.0, 16.0, 64.0}) {
      std::vector<double> w(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) w[i] = c[i] - t * rho * u[i];
      add(Point(std::move(w)));
    }
  }
  return out;
}

inline CoverDescriptor point_cover(const MetricSpace& space, const Point& p) {
  CoverDescriptor out;
  out.space_id = space.id();
  out.kind = CoverDescriptor::Kind::Point;
  out.point = p;
  return out;
}

}  // namespace ofl::spaces_detail
