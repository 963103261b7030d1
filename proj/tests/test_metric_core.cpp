#include <doctest.h>

#include <cmath>

#include "ofl/metric_core.hpp"
#include "support.hpp"

using namespace ofl;

namespace {

PointSet scalars(const MetricSpace& s, std::vector<double> xs) {
  std::vector<Point> pts;
  for (double x : xs) pts.push_back(Point::scalar(x));
  return make_set(s, std::move(pts));
}

// Grid minimisation of the farthest-point distance.
std::pair<std::vector<double>, double> grid_center(const std::vector<std::vector<double>>& a,
                                                   double lo, double hi, int n) {
  std::vector<double> best;
  double best_r = INFINITY;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double x = lo + (hi - lo) * i / n, y = lo + (hi - lo) * j / n;
      double r = 0;
      for (const auto& p : a) r = std::max(r, std::hypot(x - p[0], y - p[1]));
      if (r < best_r) best_r = r, best = {x, y};
    }
  }
  return {best, best_r};
}

}  // namespace

TEST_SUITE("metric_core") {
  TEST_CASE("sup_distance examples") {
    IntervalSpace unit(0, 1);
    CHECK(sup_distance(unit, Point::scalar(0.5), scalars(unit, {0.5})) == 0.0);
    CHECK(sup_distance(unit, Point::scalar(0.5), scalars(unit, {1.0, 0.0})) == 0.5);
    auto box = MaxNormSpace::cube(2, -5, 5);
    const auto a = make_set(box, {Point({2.0, 1.0}), Point({0.0, 3.0})});
    CHECK(sup_distance(box, Point({0.0, 0.0}), a) == 3.0);
  }

  TEST_CASE("diameter examples") {
    IntervalSpace unit(0, 1);
    CHECK(diameter(unit, scalars(unit, {0.3})) == 0.0);
    CHECK(diameter(unit, scalars(unit, {0.0, 1.0})) == 1.0);
    for (double p : {1.0, 2.0, 4.0}) {
      LpSpace lp(3, p);
      const auto e = make_set(lp, {Point({1.0, 0, 0}), Point({0, 1.0, 0}), Point({0, 0, 1.0})});
      CHECK(diameter(lp, e) == doctest::Approx(std::pow(2.0, 1.0 / p)).epsilon(1e-14));
    }
  }

  TEST_CASE("inner_radius examples") {
    IntervalSpace unit(0, 1);
    CHECK(inner_radius(unit, scalars(unit, {0.7})) == 0.0);
    CHECK(inner_radius(unit, scalars(unit, {0.0, 1.0, 0.5})) == 0.5);
    EuclideanSpace plane(2, 2.0);
    const auto tri = make_set(plane, {Point({0.0, 0.0}), Point({1.0, 0.0}),
                                      Point({0.5, std::sqrt(3.0) / 2.0})});
    CHECK(inner_radius(plane, tri) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("admissible cover examples") {
    IntervalSpace unit(0, 1);
    const auto c = admissible_cover(unit, scalars(unit, {0.0, 1.0}));
    CHECK(c.kind == CoverDescriptor::Kind::Interval);
    CHECK(c.lo[0] == 0.0);
    CHECK(c.hi[0] == 1.0);
    const auto single = admissible_cover(unit, scalars(unit, {0.25}));
    CHECK(single.kind == CoverDescriptor::Kind::Point);
    CHECK(single.point == Point::scalar(0.25));

    auto box = MaxNormSpace::cube(2, -4, 4);
    const auto a = make_set(box, {Point({0.0, 0.0}), Point({2.0, 1.0})});
    const auto cov = admissible_cover(box, a);
    REQUIRE(cov.kind == CoverDescriptor::Kind::Box);
    CHECK(cov.lo == std::vector<double>{0.0, 0.0});
    CHECK(cov.hi == std::vector<double>{2.0, 1.0});
    // Every ball containing both points contains the box; points off the box are cut
    // off by some such ball.
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
      const Point c = box.sample(rng);
      const double r = std::max(box.distance(c, a.points[0]), box.distance(c, a.points[1]));
      for (const Point& corner : {Point({0.0, 1.0}), Point({2.0, 0.0}), Point({1.0, 0.5})}) {
        CHECK(box.distance(c, corner) <= r + 1e-12);
      }
    }
    for (int i = 0; i < 500; ++i) {
      const Point p({uniform(rng, -4, 4), uniform(rng, -4, 4)});
      const bool in_box = p.coords[0] >= 0 && p.coords[0] <= 2 && p.coords[1] >= 0 && p.coords[1] <= 1;
      CHECK(cov.contains(box, p, 1e-12) == in_box);
    }
  }

  TEST_CASE("chebyshev center examples") {
    IntervalSpace unit(0, 1);
    const auto c = chebyshev_center(unit, scalars(unit, {0.0, 1.0}));
    CHECK(c.point == Point::scalar(0.5));
    CHECK(c.radius == 0.5);

    const std::vector<std::vector<double>> tri{{0, 0}, {1, 0}, {0.5, 0.8660254}};
    const auto [g, gr] = grid_center(tri, -0.5, 1.5, 400);
    EuclideanSpace plane(2, 2.0);
    const auto e = chebyshev_center(plane, make_set(plane, {Point(tri[0]), Point(tri[1]), Point(tri[2])}));
    CHECK(e.point.coords[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(e.point.coords[1] == doctest::Approx(0.2886751).epsilon(1e-6));
    CHECK(e.radius == doctest::Approx(0.5773503).epsilon(1e-6));
    CHECK(e.radius <= gr + 1e-12);
    CHECK(std::abs(e.radius - gr) < 5e-3);

    auto box = MaxNormSpace::cube(2, -4, 4);
    const auto m = chebyshev_center(box, make_set(box, {Point({0.0, 0.0}), Point({2.0, 1.0})}));
    CHECK(m.point == Point({1.0, 0.5}));
    CHECK(m.radius == 1.0);
  }

  TEST_CASE("property: metric axioms on 10^4 triples per space") {
    for (const auto& s : test::all_spaces()) {
      CAPTURE(s->id());
      Rng rng(split_seed(17, std::hash<std::string>{}(s->id())));
      for (int i = 0; i < 10000; ++i) {
        const Point x = s->sample(rng), y = s->sample(rng), z = s->sample(rng);
        const double xy = s->distance(x, y), yz = s->distance(y, z), xz = s->distance(x, z);
        REQUIRE(s->distance(x, x) <= 1e-12);
        REQUIRE(xy >= 0.0);
        REQUIRE(std::abs(xy - s->distance(y, x)) <= 1e-12);
        REQUIRE(xz <= xy + yz + 1e-12);
      }
    }
  }

  TEST_CASE("property: center is no farther than any point of the cover") {
    for (const auto& s : test::all_spaces()) {
      if (!s->has_center_oracle() || !s->has_cover_oracle()) continue;
      CAPTURE(s->id());
      Rng rng(21);
      for (int t = 0; t < 60; ++t) {
        const auto a = make_set(*s, test::sample_points(*s, rng, 2 + t % 5));
        const auto cov = admissible_cover(*s, a);
        const auto c = chebyshev_center(*s, a);
        if (!cov.contains(*s, c.point, 1e-9)) continue;
        for (int i = 0; i < 50; ++i) {
          const Point x = s->sample(rng);
          CHECK(s->distance(x, c.point) <= sup_distance(*s, x, a) + 1e-9);
        }
      }
    }
  }

  TEST_CASE("property: hyperconvex radius ratio and diameter of the cover") {
    IntervalSpace unit(0, 1);
    auto box = MaxNormSpace::cube(3, 0, 1);
    for (const MetricSpace* s : {static_cast<const MetricSpace*>(&unit), static_cast<const MetricSpace*>(&box)}) {
      Rng rng(5);
      for (int t = 0; t < 500; ++t) {
        const auto a = make_set(*s, test::sample_points(*s, rng, 2 + t % 6));
        const double d = diameter(*s, a);
        const auto c = chebyshev_center(*s, a);
        CHECK(c.radius <= 0.5 * d + 1e-9);
        CHECK(inner_radius(*s, a) <= d + 1e-12);
        // cov is a box here: its diameter is attained at opposite corners
        const auto cov = admissible_cover(*s, a);
        if (cov.kind == CoverDescriptor::Kind::Point) continue;
        double box_diam = 0;
        for (std::size_t i = 0; i < cov.lo.size(); ++i) box_diam = std::max(box_diam, cov.hi[i] - cov.lo[i]);
        CHECK(box_diam == doctest::Approx(d).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("vector kernels and generic distances agree") {
    EuclideanSpace ball(5, 1.0);
    Rng rng(8);
    const auto pts = test::sample_points(ball, rng, 37);
    const Point x = ball.sample(rng);
    std::vector<double> out;
    distances_to(ball, x, std::span<const Point>(pts), out);
    REQUIRE(out.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(out[i] == doctest::Approx(ball.distance(x, pts[i])));
    CHECK(sup_distance(ball, x, std::span<const Point>(pts)) ==
          doctest::Approx(test::brute_sup(ball, x, pts)).epsilon(1e-14));
  }
}
