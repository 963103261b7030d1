#include <doctest.h>

#include <cmath>

#include "ofl/analysis.hpp"
#include "ofl/builtin_maps.hpp"
#include "ofl/metric_core.hpp"
#include "support.hpp"

using namespace ofl;

namespace {

MetricSpaceHandle unit() { return std::make_shared<IntervalSpace>(0.0, 1.0); }

SamplePlan small_plan(std::uint64_t seed, int horizon = 16) {
  SamplePlan p;
  p.seed = seed;
  p.pairs = 128;
  p.horizon = horizon;
  p.words = 16;
  p.max_anchor_pairs = 512;
  return p;
}

// Independent brute force of max_{|s| <= H} d(s x, s y) / D(x, o_H(y)) for a single map.
double brute_orbit_ratio(const GeneratorMap& g, const MetricSpace& s, const Point& x, const Point& y,
                         int h) {
  std::vector<Point> oy{y};
  for (int i = 0; i < h; ++i) oy.push_back(g.apply(oy.back()));
  const double den = test::brute_sup(s, x, oy);
  Point sx = x, sy = y;
  double best = 0;
  for (int i = 1; i <= h; ++i) {
    sx = g.apply(sx);
    sy = g.apply(sy);
    best = std::max(best, s.distance(sx, sy) / den);
  }
  return best;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("identity: all constants are 1") {
    Action id(unit(), {maps::identity()}, CompositionLaw::Single);
    const auto r = analyze(id, small_plan(1), {1.0});
    CHECK(r.uniform.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.orbit.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.strong.value == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(r.star.size() == 1);
    CHECK(r.star[0].pass);
    CHECK(r.star[0].inconclusive);
    CHECK(r.star[0].gated_pairs == 0);
  }

  TEST_CASE("contraction x/2") {
    Action half(unit(), {maps::contraction(0.5, {0.0})}, CompositionLaw::Single);
    CHECK(estimate_uniform(half, small_plan(2)).value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(estimate_strong(half, small_plan(2)).value == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("square map is not uniformly Lipschitz") {
    Action sq(unit(), {maps::square()}, CompositionLaw::Single);
    const auto u = estimate_uniform(sq, small_plan(3));
    CHECK(u.value > 10.0);
    CHECK(u.has_witness);
    CHECK(std::max(u.x.coords[0], u.y.coords[0]) > 0.9);
  }

  TEST_CASE("step map") {
    Action step(unit(), {maps::step()}, CompositionLaw::Single);
    SamplePlan p = small_plan(4, 64);
    p.explicit_pairs.push_back({Point::scalar(0.5), Point::scalar(1.0)});
    const auto r = analyze(step, p, {2.0, 1.9});
    CHECK(std::abs(r.orbit.value - 2.0) <= 1e-9);
    CHECK(r.orbit.x == Point::scalar(0.5));
    CHECK(r.orbit.y == Point::scalar(1.0));
    CHECK(r.star[0].pass);
    CHECK_FALSE(r.star[1].pass);
    CHECK(r.star[1].advisory);
    CHECK(r.star[1].x == Point::scalar(0.5));
    CHECK(r.star[1].y == Point::scalar(1.0));
    CHECK(brute_orbit_ratio(maps::step(), *unit(), Point::scalar(0.5), Point::scalar(1.0), 8) == 2.0);
  }

  TEST_CASE("S_1/2 orbit constant stays below 3a") {
    Action sa(std::make_shared<IntervalSpace>(-1.0, 1.0), {maps::sa(0.5)}, CompositionLaw::Single);
    CHECK(estimate_orbit(sa, small_plan(5)).value <= 1.5 + 1e-9);
  }

  TEST_CASE("square map: star at k=1 and the (y/2, y) family") {
    Action sq(unit(), {maps::square()}, CompositionLaw::Single);
    SamplePlan p = small_plan(6, 32);
    p.pairs = 2000;
    const auto star = check_star(sq, 1.0, p);
    CHECK(star.pass);
    CHECK(star.gated_pairs > 500);
    SamplePlan w = small_plan(6, 32);
    w.pairs = 0;
    w.anchors = false;
    double prev = 0;
    for (double y : {0.9, 0.99, 0.999}) {
      w.explicit_pairs = {{Point::scalar(y / 2), Point::scalar(y)}};
      const double v = estimate_orbit(sq, w).value;
      CHECK(v > prev);
      CHECK(v < 2.0);
      CHECK(v == doctest::Approx(brute_orbit_ratio(maps::square(), *unit(), Point::scalar(y / 2),
                                                   Point::scalar(y), 32)).epsilon(1e-12));
      prev = v;
    }
  }

  TEST_CASE("lp shift strong constant at x = 0") {
    for (double pe : {1.0, 2.0, 4.0}) {
      auto lp = std::make_shared<LpSpace>(8, pe);
      Action a(lp, {maps::shift_lp(8)}, CompositionLaw::Single);
      SamplePlan p = small_plan(7, 32);
      p.anchors = false;
      p.fixed_x = Point(std::vector<double>(8, 0.0));
      CHECK(estimate_strong(a, p).value == doctest::Approx(std::pow(2.0, 1.0 / pe)).epsilon(1e-9));
    }
  }

  TEST_CASE("explicit pairs are honoured and zero denominators skipped") {
    Action id(unit(), {maps::identity()}, CompositionLaw::Single);
    SamplePlan p = small_plan(8);
    p.pairs = 0;
    p.anchors = false;
    p.explicit_pairs = {{Point::scalar(0.2), Point::scalar(0.2)}};
    CHECK_THROWS_AS(estimate_orbit(id, p), std::domain_error);
  }

  TEST_CASE("property: determinism and worker independence") {
    auto disc = std::make_shared<EuclideanSpace>(2, 1.0);
    Action rr(disc, {maps::rotation(0.4), maps::rotation(1.1)}, CompositionLaw::Commuting);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      SamplePlan p = small_plan(seed, 6);
      const auto a = analyze(rr, p, {1.0});
      const auto b = analyze(rr, p, {1.0});
      p.workers = 4;
      const auto c = analyze(rr, p, {1.0});
      for (const auto* r : {&b, &c}) {
        CHECK(r->orbit.value == a.orbit.value);
        CHECK(r->orbit.x == a.orbit.x);
        CHECK(r->orbit.y == a.orbit.y);
        CHECK(r->uniform.value == a.uniform.value);
        CHECK(r->strong.value == a.strong.value);
        CHECK(r->star[0].worst_margin == a.star[0].worst_margin);
      }
    }
  }

  TEST_CASE("property: hierarchy on random contractions and rotations") {
    Rng rng(9);
    for (int t = 0; t < 30; ++t) {
      const double c = uniform(rng, 0.1, 0.95);
      const double m = uniform(rng, 0.0, 1.0);
      Action a(unit(), {maps::contraction(c, {m})}, CompositionLaw::Single);
      const auto r = analyze(a, small_plan(100 + t));
      CHECK(check_hierarchy(r, a).pass);
      CHECK(r.uniform.value == doctest::Approx(c).epsilon(1e-9));
    }
    auto disc = std::make_shared<EuclideanSpace>(2, 1.0);
    for (int t = 0; t < 10; ++t) {
      Action a(disc, {maps::rotation(uniform(rng, 0, 6)), maps::rotation(uniform(rng, 0, 6))},
               CompositionLaw::Commuting);
      const auto r = analyze(a, small_plan(200 + t, 6));
      const auto h = check_hierarchy(r, a);
      CHECK(h.pass);
      CHECK(h.strong_checked);
    }
  }

  TEST_CASE("property: star gate soundness") {
    Action sq(unit(), {maps::square()}, CompositionLaw::Single);
    SamplePlan p = small_plan(10, 16);
    p.pairs = 300;
    const auto s = check_star(sq, 1.0, p);
    REQUIRE(s.has_witness);
    const auto ox = orbit(sq, s.x, 16).points();
    const auto oy = orbit(sq, s.y, 16).points();
    CHECK(test::brute_sup(*unit(), s.x, oy) <= test::brute_sup(*unit(), s.x, ox) + p.tol);
  }

  TEST_CASE("property: k_orbit is non-increasing in the horizon on fixed pairs") {
    Action sq(unit(), {maps::square()}, CompositionLaw::Single);
    Rng rng(11);
    SamplePlan p = small_plan(11);
    p.pairs = 0;
    p.anchors = false;
    for (int i = 0; i < 40; ++i) {
      const double y = uniform(rng, 0.05, 0.99);
      p.explicit_pairs.push_back({Point::scalar(uniform(rng, 0, 1)), Point::scalar(y)});
    }
    // with the image horizon fixed, a longer orbit can only grow the denominators
    std::vector<double> den;
    for (int h : {4, 8, 16, 32}) {
      double total = 0;
      for (const auto& pr : p.explicit_pairs) total += sup_distance(*unit(), pr.x, orbit(sq, pr.y, h).as_set(unit()->id()));
      den.push_back(total);
    }
    for (std::size_t i = 1; i < den.size(); ++i) CHECK(den[i] >= den[i - 1]);
  }
}
