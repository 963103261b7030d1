#include <doctest.h>

#include <cmath>

#include "ofl/metric_core.hpp"
#include "support.hpp"

using namespace ofl;

namespace {

// Rejection-samples B(x,(1+mu)r) ∩ B(y,k(1+mu)r) and returns the largest d(z, p) / r seen,
// or -1 when fewer than `want` lens points were found.
double lens_spread(const MetricSpace& s, const Point& x, const Point& y, double r, double k,
                   double mu, const Point& z, std::size_t want, Rng& rng) {
  std::size_t found = 0, tries = 0;
  double worst = 0.0;
  while (found < want && tries < 200 * want) {
    ++tries;
    const Point p = s.sample_ball(x, (1 + mu) * r, rng);
    if (s.distance(p, x) > (1 + mu) * r + 1e-12 || s.distance(p, y) > k * (1 + mu) * r + 1e-12) continue;
    ++found;
    worst = std::max(worst, s.distance(z, p) / r);
  }
  return found < want ? -1.0 : worst;
}

}  // namespace

TEST_SUITE("spaces") {
  TEST_CASE("reference constants") {
    CHECK(IntervalSpace(0, 1).reference_constants().kappa == 2.0);
    CHECK(*EuclideanSpace(2, 1.0).reference_constants().kappa == doctest::Approx(std::sqrt(2.0)));
    const auto box = MaxNormSpace::cube(2, 0, 1).reference_constants();
    CHECK(box.kappa == 1.0);
    CHECK(box.normal_coeff == 0.5);
  }

  TEST_CASE("interval lens oracle") {
    IntervalSpace s(-1, 1);
    const double r = 0.2, k = 1.5, mu = 0.05;
    const auto res = regularity_oracle(s, Point::scalar(0.0), Point::scalar(r), r, k, mu);
    REQUIRE(res);
    // lens [-0.575 r, 1.05 r]
    CHECK(res->z.coords[0] == doctest::Approx(0.2375 * r).epsilon(1e-12));
    CHECK(res->alpha == doctest::Approx(0.8125).epsilon(1e-12));
    CHECK(res->z.coords[0] > 0.0);
    Rng rng(1);
    const double spread = lens_spread(s, Point::scalar(0.0), Point::scalar(r), r, k, mu, res->z, 10000, rng);
    REQUIRE(spread >= 0.0);
    CHECK(spread <= res->alpha + 1e-12);
  }

  TEST_CASE("max-norm plane refuses every k > 1") {
    auto s = MaxNormSpace::cube(2, -1, 1);
    Rng rng(2);
    for (int i = 0; i < 200; ++i) {
      const Point x = s.sample(rng);
      const double r = uniform(rng, 0.05, 0.5);
      const Point y = s.sample_ball(x, r, rng);
      if (s.distance(x, y) < 0.5 * r) continue;
      for (double mu : {0.01, 0.1}) CHECK_FALSE(s.regularity(x, y, r, 1.1, mu).has_value());
    }
  }

  TEST_CASE("euclidean lens oracle puts z on the segment") {
    EuclideanSpace s(2, 3.0);
    const Point x({0.0, 0.0}), y({1.0, 0.0});
    const auto res = regularity_oracle(s, x, y, 1.0, 1.3, 0.01);
    REQUIRE(res);
    CHECK(res->alpha < 1.0);
    CHECK(std::abs(res->z.coords[1]) <= 1e-12);
    CHECK(res->z.coords[0] >= 0.0);
    CHECK(res->z.coords[0] <= 1.0);
    Rng rng(3);
    const double spread = lens_spread(s, x, y, 1.0, 1.3, 0.01, res->z, 100000, rng);
    REQUIRE(spread >= 0.0);
    CHECK(spread <= res->alpha + 1e-12);
  }

  TEST_CASE("property: accepted oracle answers contain 10^4 lens samples") {
    std::vector<MetricSpaceHandle> spaces{std::make_shared<IntervalSpace>(0.0, 1.0),
                                          std::make_shared<EuclideanSpace>(2, 1.0),
                                          std::make_shared<EuclideanSpace>(3, 1.0),
                                          std::make_shared<LpSpace>(3, 2.0),
                                          std::make_shared<TreeSpace>(TreeSpace::default_tree())};
    for (const auto& s : spaces) {
      CAPTURE(s->id());
      Rng rng(split_seed(4, std::hash<std::string>{}(s->id())));
      int accepted = 0;
      for (int t = 0; t < 40 && accepted < 6; ++t) {
        const Point x = s->sample(rng);
        const double r = uniform(rng, 0.05, 0.3) * s->diameter_bound();
        const double mu = (t % 3 == 0 ? 0.01 : t % 3 == 1 ? 0.05 : 0.1);
        const Point y = s->sample_ball(x, 1.5 * r, rng);
        if (s->distance(x, y) < (1 - mu) * r) continue;
        const double k = uniform(rng, 1.0, 1.3);
        const auto res = regularity_oracle(*s, x, y, r, k, mu);
        if (!res) continue;
        ++accepted;
        CAPTURE(r);
        const double spread = lens_spread(*s, x, y, r, k, mu, res->z, 10000, rng);
        if (spread < 0.0) continue;
        CHECK(spread <= res->alpha + 1e-9);
      }
      CHECK(accepted > 0);
    }
  }

  TEST_CASE("property: tree four-point condition on 10^4 quadruples") {
    const auto t = TreeSpace::default_tree();
    Rng rng(6);
    for (int i = 0; i < 10000; ++i) {
      const Point x = t.sample(rng), y = t.sample(rng), z = t.sample(rng), w = t.sample(rng);
      const double a = t.distance(x, y) + t.distance(z, w);
      const double b = t.distance(x, z) + t.distance(y, w);
      const double c = t.distance(x, w) + t.distance(y, z);
      // the two largest of the three sums agree
      double v[3] = {a, b, c};
      std::sort(v, v + 3);
      REQUIRE(v[2] - v[1] <= 1e-12);
    }
  }

  TEST_CASE("tree geodesics") {
    const auto t = TreeSpace::default_tree();
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
      const Point a = t.sample(rng), b = t.sample(rng);
      const double d = t.distance(a, b);
      const double s = uniform(rng, 0, d);
      const Point m = t.point_along(a, b, s);
      CHECK(t.distance(a, m) == doctest::Approx(s).epsilon(1e-9));
      CHECK(t.distance(m, b) == doctest::Approx(d - s).epsilon(1e-9));
    }
  }

  TEST_CASE("property: eventually constant distances ignore padding") {
    EventuallyConstSeqSpace s(6, 1.0);
    Rng rng(8);
    for (int i = 0; i < 2000; ++i) {
      const Point x = s.sample(rng), y = s.sample(rng);
      Point px = x;
      const int extra = 1 + i % 4;
      for (int j = 0; j < extra; ++j) px.coords.push_back(x.tail);
      CHECK(s.distance(px, y) == s.distance(x, y));
      CHECK(s.distance(y, px) == s.distance(y, x));
      CHECK(EventuallyConstSeqSpace::normalize(px).coords.size() <= x.coords.size());
    }
    CHECK(s.distance(Point({0.5, 0.0}, 0.0), EventuallyConstSeqSpace::constant(0.0)) == 0.5);
    CHECK(s.distance(Point({}, 1.0), Point({1.0, 1.0, 0.25}, 1.0)) == 0.75);
  }

  TEST_CASE("samplers stay in the domain") {
    for (const auto& s : test::all_spaces()) {
      CAPTURE(s->id());
      Rng rng(9);
      for (int i = 0; i < 2000; ++i) {
        const Point p = s->sample(rng);
        REQUIRE(s->contains(p, 1e-12));
        const double r = uniform(rng, 0.0, 0.5);
        const Point q = s->sample_ball(p, r, rng);
        REQUIRE(s->contains(q, 1e-9));
        REQUIRE(s->distance(p, q) <= r + 1e-9);
      }
      for (const auto& a : s->anchors()) CHECK(s->contains(a, 1e-12));
    }
  }
}
