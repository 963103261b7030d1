#include <doctest.h>

#include <cmath>

#include "ofl/analysis.hpp"
#include "ofl/builtin_maps.hpp"
#include "ofl/solvers.hpp"
#include "support.hpp"

using namespace ofl;

namespace {

MetricSpaceHandle unit() { return std::make_shared<IntervalSpace>(0.0, 1.0); }
MetricSpaceHandle sym() { return std::make_shared<IntervalSpace>(-1.0, 1.0); }

TraceStep step_at(double x, double residual) {
  TraceStep s;
  s.x = Point::scalar(x);
  s.residual = residual;
  return s;
}

}  // namespace

TEST_SUITE("solvers") {
  TEST_CASE("picard examples") {
    SolverConfig cfg;
    Action sa(sym(), {maps::sa(0.5)}, CompositionLaw::Single);
    const auto a = picard(sa, Point::scalar(0.7), cfg);
    CHECK(a.outcome == Outcome::Converged);
    CHECK(std::abs(a.fixed_point->coords[0]) < cfg.epsilon / 0.5);
    Action step(unit(), {maps::step()}, CompositionLaw::Single);
    const auto b = picard(step, Point::scalar(0.3), cfg);
    CHECK(b.outcome == Outcome::CycleDetected);
    CHECK(b.cycle_period == 2);
    Action sq(unit(), {maps::square()}, CompositionLaw::Single);
    const auto c = picard(sq, Point::scalar(0.9), cfg);
    CHECK(c.outcome == Outcome::Converged);
    CHECK(c.fixed_point->coords[0] < 1e-6);
  }

  TEST_CASE("classify_outcome examples") {
    Action sq(unit(), {maps::square()}, CompositionLaw::Single);
    SolverConfig cfg;
    SolverTrace t;
    t.steps = {step_at(0.0, 0.0), step_at(0.0, 0.0)};
    CHECK(classify_outcome(sq, t, cfg) == Outcome::Converged);
    Action step(unit(), {maps::step()}, CompositionLaw::Single);
    t.steps = {step_at(0.0, 1.0), step_at(1.0, 1.0), step_at(0.0, 1.0), step_at(1.0, 1.0)};
    int period = 0;
    CHECK(classify_outcome(step, t, cfg, &period) == Outcome::CycleDetected);
    CHECK(period == 2);
    t.steps = {step_at(0.2, 0.16), step_at(0.3, 0.21)};
    CHECK(classify_outcome(sq, t, cfg) == Outcome::BudgetExhausted);
    t.steps = {step_at(0.2, 0.16), step_at(1.5, 0.21)};
    CHECK(classify_outcome(sq, t, cfg) == Outcome::Diverged);
    t.steps.clear();
    CHECK_THROWS(classify_outcome(sq, t, cfg));
  }

  TEST_CASE("config validation") {
    SolverConfig cfg;
    cfg.epsilon = 0;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg = SolverConfig{};
    cfg.tail_start = cfg.horizon;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
  }

  TEST_CASE("orbit-center iteration examples") {
    SolverConfig cfg;
    Action sq(unit(), {maps::square()}, CompositionLaw::Single);
    const auto a = orbit_center_iteration(sq, Point::scalar(0.9), cfg);
    CHECK(a.outcome == Outcome::Converged);
    CHECK(a.final_residual < cfg.epsilon);
    CHECK(std::abs(a.fixed_point->coords[0]) < 1e-6);
    Action step(unit(), {maps::step()}, CompositionLaw::Single);
    CHECK(orbit_center_iteration(step, Point::scalar(0.3), cfg).outcome != Outcome::Converged);
    auto ecs = std::make_shared<EventuallyConstSeqSpace>();
    Action prus(ecs, {maps::prus()}, CompositionLaw::Single);
    const auto c = orbit_center_iteration(prus, EventuallyConstSeqSpace::constant(0.0), cfg);
    CHECK(c.outcome == Outcome::BudgetExhausted);
    for (const auto& s : c.steps) CHECK(s.residual == 1.0);
    auto disc = std::make_shared<EuclideanSpace>(2, 1.0);
    Action free(disc, {maps::rotation(0.4), maps::reflection(0.3)}, CompositionLaw::Free);
    CHECK_THROWS_AS(orbit_center_iteration(free, Point({0.1, 0.1}), cfg), UnsupportedOperation);
  }

  TEST_CASE("Lifschitz iteration examples") {
    SolverConfig cfg;
    cfg.k = 1.5;
    Action sq(unit(), {maps::square()}, CompositionLaw::Single);
    const auto a = lifschitz_iteration(sq, Point::scalar(0.9), cfg);
    CHECK(a.outcome == Outcome::Converged);
    CHECK(std::abs(a.fixed_point->coords[0]) < 1e-5);
    cfg.k = 1.8;
    Action sa(sym(), {maps::sa(0.6)}, CompositionLaw::Single);
    const auto b = lifschitz_iteration(sa, Point::scalar(0.7), cfg);
    CHECK(b.outcome == Outcome::Converged);
    CHECK(b.final_residual < 1e-6);
    cfg.k = 1.9;
    Action step(unit(), {maps::step()}, CompositionLaw::Single);
    CHECK(lifschitz_iteration(step, Point::scalar(0.3), cfg).outcome != Outcome::Converged);
    auto box = std::make_shared<MaxNormSpace>(MaxNormSpace::cube(2, 0, 1));
    Action half(box, {maps::contraction(0.5, {0.5})}, CompositionLaw::Single);
    CHECK_THROWS_AS(lifschitz_iteration(half, Point({0.1, 0.2}), cfg), UnsupportedOperation);
  }

  TEST_CASE("property: converged runs pass an independent residual recheck") {
    Rng rng(3);
    SolverConfig cfg;
    cfg.k = 1.5;
    for (int t = 0; t < 20; ++t) {
      const double c = uniform(rng, 0.1, 0.9), m = uniform(rng, 0.0, 1.0);
      Action a(unit(), {maps::contraction(c, {m})}, CompositionLaw::Single);
      const Point x0 = Point::scalar(uniform(rng, 0, 1));
      for (const auto& trace : {picard(a, x0, cfg), orbit_center_iteration(a, x0, cfg), lifschitz_iteration(a, x0, cfg)}) {
        CAPTURE(trace.solver);
        REQUIRE(trace.outcome == Outcome::Converged);
        const Point& x = *trace.fixed_point;
        CHECK(std::abs(c * (x.coords[0] - m) + m - x.coords[0]) < cfg.epsilon);
        CHECK(std::abs(x.coords[0] - m) < cfg.epsilon / (1 - c) + 1e-12);
      }
    }
  }

  TEST_CASE("property: Lifschitz steps shrink r and stay within A r") {
    Rng rng(4);
    for (int t = 0; t < 12; ++t) {
      const double a = uniform(rng, 0.2, 0.6);
      Action act(sym(), {maps::sa(a)}, CompositionLaw::Single);
      SolverConfig cfg;
      cfg.k = std::min(3 * a, 1.9);
      cfg.seed = 40 + t;
      const auto tr = lifschitz_iteration(act, Point::scalar(uniform(rng, -1, 1)), cfg);
      CHECK(tr.outcome == Outcome::Converged);
      for (std::size_t j = 0; j + 1 < tr.steps.size(); ++j) {
        const auto& s = tr.steps[j];
        if (!std::isfinite(s.alpha) || !std::isfinite(tr.steps[j + 1].r_est)) continue;
        CHECK(tr.steps[j + 1].r_est <= s.alpha * s.r_est + 1e-9);
        CHECK(s.step_length <= (s.alpha + 1 + s.mu) * s.r_est + 1e-9);
      }
    }
  }

  // The identity word bounds d(x, t x) by D(x, o(x)) alone, so the factor is max(k_strong, 1).
  TEST_CASE("property: orbit diameters are bounded by k_strong times the self-orbit radius") {
    std::vector<Action> actions{Action(unit(), {maps::contraction(0.5, {0.3})}, CompositionLaw::Single),
                                Action(sym(), {maps::sa(0.25)}, CompositionLaw::Single)};
    for (const auto& a : actions) {
      SamplePlan p;
      p.seed = 5;
      p.pairs = 256;
      p.horizon = 16;
      const double ks = std::max(estimate_strong(a, p).value, 1.0);
      SolverConfig cfg;
      cfg.horizon = 16;
      cfg.tail_start = 8;
      const auto tr = orbit_center_iteration(a, Point::scalar(0.8), cfg);
      for (const auto& s : tr.steps) CHECK(s.orbit_diameter <= ks * s.self_orbit_radius + 1e-9);
    }
  }
}
