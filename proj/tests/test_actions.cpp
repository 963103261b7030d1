#include <doctest.h>

#include <cmath>
#include <set>

#include "ofl/builtin_maps.hpp"
#include "ofl/metric_core.hpp"
#include "support.hpp"

using namespace ofl;

namespace {

std::set<double> scalar_set(const OrbitTable& t) {
  std::set<double> out;
  for (const auto& e : t.entries) out.insert(e.point.coords[0]);
  return out;
}

MetricSpaceHandle unit() { return std::make_shared<IntervalSpace>(0.0, 1.0); }

}  // namespace

TEST_SUITE("actions") {
  TEST_CASE("evaluate examples") {
    Action id(unit(), {maps::identity()}, CompositionLaw::Single);
    CHECK(id.evaluate({}, Point::scalar(0.3)) == Point::scalar(0.3));
    Action sq(unit(), {maps::square()}, CompositionLaw::Single);
    CHECK(sq.evaluate(sq.power(3), Point::scalar(0.5)).coords[0] == 0.00390625);
    Action sa(std::make_shared<IntervalSpace>(-1.0, 1.0), {maps::sa(0.5)}, CompositionLaw::Single);
    const Point third = Point::scalar(1.0 / 3.0, true);
    CHECK(sa.evaluate(sa.power(2), third).coords[0] == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
    CHECK(sa.evaluate(sa.power(1), third).coords[0] == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
    CHECK(sa.evaluate(sa.power(1), Point::scalar(1.0 / 3.0)).coords[0] ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  }

  TEST_CASE("orbit examples") {
    Action step(unit(), {maps::step()}, CompositionLaw::Single);
    const auto o = orbit(step, Point::scalar(1.0), 4);
    CHECK(o.entries.size() == 5);
    CHECK(scalar_set(o) == std::set<double>{0.0, 1.0});
    Action sq(unit(), {maps::square()}, CompositionLaw::Single);
    CHECK(scalar_set(orbit(sq, Point::scalar(0.5), 3)) ==
          std::set<double>{0.5, 0.25, 0.0625, 0.00390625});
    for (int h : {1, 5, 40}) CHECK(scalar_set(orbit(sq, Point::scalar(0.0), h)) == std::set<double>{0.0});
  }

  TEST_CASE("builtin map values") {
    const auto s = unit();
    const auto step = make_builtin_map("step", {}, *s);
    CHECK(step.apply(Point::scalar(0.3)) == Point::scalar(1.0));
    CHECK(step.apply(Point::scalar(1.0)) == Point::scalar(0.0));
    EventuallyConstSeqSpace ecs;
    const auto prus = make_builtin_map("prus", {}, ecs);
    const Point t0 = prus.apply(EventuallyConstSeqSpace::constant(0.0));
    CHECK(t0.coords == std::vector<double>{1.0});
    CHECK(t0.tail == 0.0);
    LpSpace l3(3, 2.0);
    const auto shift = make_builtin_map("shift_lp", {}, l3);
    CHECK(shift.apply(Point({0.0, 0.0, 1.0})) == Point({1.0, 0.0, 0.0}));
    CHECK(shift.apply(Point({1.0, 0.0, 0.0})) == Point({0.0, 1.0, 0.0}));
    CHECK_THROWS_AS(make_builtin_map("nope", {}, *s), UsageError);
    CHECK_THROWS_AS(make_builtin_map("prus", {}, *s), UsageError);
    CHECK_THROWS_AS(make_builtin_map("sa", {{"a", 1.5}}, *s), UsageError);
  }

  TEST_CASE("commutation checks") {
    auto disc = std::make_shared<EuclideanSpace>(2, 1.0);
    CHECK(check_inclusion_Ss_in_sS(Action(unit(), {maps::square()}, CompositionLaw::Single), 64, 1).pass);
    Action rr(disc, {maps::rotation(0.4), maps::rotation(1.1)}, CompositionLaw::Commuting);
    CHECK(check_inclusion_Ss_in_sS(rr, 64, 1).pass);
    CHECK_THROWS_AS(Action(disc, {maps::rotation(0.4), maps::reflection(0.3)}, CompositionLaw::Commuting),
                    UsageError);
    Action free(disc, {maps::rotation(0.4), maps::reflection(0.3)}, CompositionLaw::Free);
    const auto rep = check_inclusion_Ss_in_sS(free, 64, 1);
    CHECK_FALSE(rep.pass);
    CHECK(rep.witness_p.has_value());
    CHECK(rep.witness_point.has_value());
    CHECK(rep.witness_gap > 1e-9);
  }

  TEST_CASE("word enumeration is graded lexicographic") {
    auto disc = std::make_shared<EuclideanSpace>(2, 1.0);
    Action free(disc, {maps::rotation(0.4), maps::reflection(0.3)}, CompositionLaw::Free);
    const auto w = free.words_up_to(2);
    REQUIRE(w.size() == 7);
    CHECK(w[0].empty());
    CHECK(w[1] == Word{0});
    CHECK(w[2] == Word{1});
    CHECK(w[3] == Word{0, 0});
    CHECK(w[6] == Word{1, 1});
    CHECK(free.word_count_up_to(3) == 15);
    Action comm(disc, {maps::rotation(0.4), maps::rotation(1.1)}, CompositionLaw::Commuting);
    CHECK(comm.words_up_to(2).size() == 6);
    CHECK(comm.canonical({1, 0, 1}) == Word{0, 1, 1});
    // a·b acts as a(b(x))
    const Point x({0.3, 0.1});
    const Point ab = free.evaluate(free.compose({0}, {1}), x);
    const Point direct = free.generator(0).apply(free.generator(1).apply(x));
    CHECK(disc->distance(ab, direct) <= 1e-15);
  }

  TEST_CASE("preorder totality") {
    CHECK(PreorderPolicy(CompositionLaw::Single).is_total());
    CHECK_FALSE(PreorderPolicy(CompositionLaw::Commuting, 2).is_total());
    CHECK_FALSE(PreorderPolicy(CompositionLaw::Free, 2).is_total());
    const PreorderPolicy single(CompositionLaw::Single);
    CHECK(single.leq({0}, {0, 0, 0}));
    CHECK_FALSE(single.leq({0, 0}, {0}));
    const PreorderPolicy comm(CompositionLaw::Commuting, 2);
    CHECK(comm.leq({0}, {0, 1}));
    CHECK_FALSE(comm.leq({0, 0}, {0, 1}));
  }

  TEST_CASE("property: tail orbits are contained in the orbit") {
    auto disc = std::make_shared<EuclideanSpace>(2, 1.0);
    std::vector<Action> actions{
        Action(unit(), {maps::square()}, CompositionLaw::Single),
        Action(std::make_shared<IntervalSpace>(-1.0, 1.0), {maps::sa(0.6)}, CompositionLaw::Single),
        Action(disc, {maps::rotation(0.4), maps::rotation(1.1)}, CompositionLaw::Commuting),
        Action(disc, {maps::rotation(0.4), maps::reflection(0.3)}, CompositionLaw::Free)};
    Rng rng(4);
    for (const auto& a : actions) {
      const int h = a.law() == CompositionLaw::Free ? 4 : 8;
      const auto words = a.words_up_to(h);
      for (int t = 0; t < 20; ++t) {
        const Point x = a.space().sample(rng);
        const auto full = orbit(a, x, h).points();
        const Word& s = words[rng() % words.size()];
        for (const auto& e : tail_orbit(a, x, s, h).entries) {
          double best = INFINITY;
          for (const auto& p : full) best = std::min(best, a.space().distance(p, e.point));
          CHECK(best <= 1e-12);
        }
        const int from = static_cast<int>(rng() % (h + 1));
        for (const auto& e : tail_orbit(a, x, from, h).entries) CHECK(static_cast<int>(e.word.size()) >= from);
      }
    }
  }

  TEST_CASE("property: Prus map is an isometry on 10^4 pairs with a bounded orbit") {
    EventuallyConstSeqSpace ecs(8, 1.0);
    const auto T = maps::prus();
    Rng rng(5);
    for (int i = 0; i < 10000; ++i) {
      const Point x = ecs.sample(rng), y = ecs.sample(rng);
      REQUIRE(std::abs(ecs.distance(T.apply(x), T.apply(y)) - ecs.distance(x, y)) <= 1e-12);
    }
    double closest = INFINITY;
    for (int i = 0; i < 1000000; ++i) {
      const Point x = ecs.sample(rng);
      closest = std::min(closest, ecs.distance(x, T.apply(x)));
    }
    CHECK(closest > 0.0);
    Point p = EventuallyConstSeqSpace::constant(0.0);
    for (int n = 0; n < 1000; ++n) {
      const Point q = T.apply(p);
      REQUIRE(ecs.distance(p, q) == 1.0);
      REQUIRE(ecs.distance(EventuallyConstSeqSpace::constant(0.0), q) <= 1.0);
      p = q;
    }
  }

  TEST_CASE("property: S_a fixes 0 and jumps between representation classes") {
    const double a = 0.5;
    const auto S = maps::sa(a);
    CHECK(S.apply(Point::scalar(0.0)).coords[0] == 0.0);
    CHECK(S.apply(Point::scalar(0.0, true)).coords[0] == 0.0);
    Rng rng(6);
    for (int i = 0; i < 1000; ++i) {
      const double x = uniform(rng, -1, 1);
      if (std::abs(x) < 1e-3) continue;
      const double gap = std::abs(S.apply(Point::scalar(x)).coords[0] - S.apply(Point::scalar(x, true)).coords[0]);
      CHECK(gap == doctest::Approx(2 * a * std::abs(x)));
    }
  }
}
