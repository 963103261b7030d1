#include "ofl/repro.hpp"

#include <cmath>
#include <functional>

#include "ofl/builtin_maps.hpp"
#include "ofl/metric_core.hpp"
#include "ofl/spaces.hpp"

namespace ofl {
namespace {

std::string fmt(double v) { return format_number(v); }

std::string pair_string(const Point& x, const Point& y) {
  return "(" + format_point(x) + ", " + format_point(y) + ")";
}

bool converged(const SolverTrace& t) { return t.outcome == Outcome::Converged; }

// Runs a solver and reports "unsupported" instead of throwing.
std::string solver_outcome(const std::function<SolverTrace()>& run) {
  try {
    return std::string(outcome_name(run().outcome));
  } catch (const UnsupportedOperation&) {
    return "unsupported";
  }
}

class Repro {
 public:
  explicit Repro(const ReproOptions& o) : opt_(o) {}

  std::vector<ReproRow> run() {
    guarded("remark-4-6", [&] { step_map(); });
    guarded("example-3-5", [&] { sa_map(); });
    guarded("example-4-4", [&] { square_map(); });
    guarded("example-4-7", [&] { shift(); });
    guarded("remark-5-8", [&] { prus(); });
    guarded("remark-2-2", [&] { kappa(); });
    guarded("normal", [&] { normal(); });
    guarded("hierarchy", [&] { hierarchy(); });
    guarded("contraction", [&] { contraction(); });
    return rows_;
  }

 private:
  void add(std::string id, std::string description, std::string measured, std::string expected,
           bool pass) {
    rows_.push_back({std::move(id), std::move(description), std::move(measured),
                     std::move(expected), pass});
  }

  void guarded(const std::string& group, const std::function<void()>& f) {
    try {
      f();
    } catch (const std::exception& e) {
      add(group + ".error", "unexpected exception", e.what(), "no exception", false);
    }
  }

  SamplePlan plan(std::uint64_t stream) const {
    SamplePlan p;
    p.seed = split_seed(opt_.seed, stream);
    p.workers = opt_.workers;
    return p;
  }

  void step_map() {
    auto space = std::make_shared<IntervalSpace>(0.0, 1.0);
    Action a(space, {maps::step()}, CompositionLaw::Single);
    SamplePlan p = plan(46);
    p.explicit_pairs.push_back({Point::scalar(0.5), Point::scalar(1.0)});
    const auto rep = analyze(a, p, {2.0, 1.9});
    const auto& o = rep.orbit;
    add("remark-4-6.k_orbit", "step map: orbit constant and witness",
        "k_orbit=" + fmt(o.value) + " at " + pair_string(o.x, o.y), "2 +- 1e-9 at (0.5, 1)",
        std::abs(o.value - 2.0) <= 1e-9 && o.x == Point::scalar(0.5) && o.y == Point::scalar(1.0));
    const auto& s2 = rep.star[0];
    const auto& s19 = rep.star[1];
    add("remark-4-6.star", "step map: condition (star) at k=2 and k=1.9",
        std::string("k=2 ") + (s2.pass ? "pass" : "fail") + ", k=1.9 " + (s19.pass ? "pass" : "fail") +
            " at " + pair_string(s19.x, s19.y),
        "k=2 pass, k=1.9 fail at (0.5, 1)",
        s2.pass && !s19.pass && s19.x == Point::scalar(0.5) && s19.y == Point::scalar(1.0));
    SolverConfig cfg;
    cfg.k = 1.9;
    cfg.seed = split_seed(opt_.seed, 461);
    const auto oc = solver_outcome([&] { return orbit_center_iteration(a, Point::scalar(0.3), cfg); });
    const auto lf = solver_outcome([&] { return lifschitz_iteration(a, Point::scalar(0.3), cfg); });
    add("remark-4-6.solvers", "step map: no fixed point found at k=1.9",
        "orbit_center " + oc + ", lifschitz " + lf, "neither converged",
        oc != "converged" && lf != "converged");
  }

  void sa_map() {
    auto space = std::make_shared<IntervalSpace>(-1.0, 1.0);
    for (double a : {0.25, 0.5, 0.6}) {
      Action act(space, {maps::sa(a)}, CompositionLaw::Single);
      const auto est = estimate_orbit(act, plan(35));
      SolverConfig cfg;
      cfg.k = std::min(3.0 * a, 1.9);
      cfg.seed = split_seed(opt_.seed, 351);
      const auto t = lifschitz_iteration(act, Point::scalar(0.7), cfg);
      const bool ok = est.value <= 3.0 * a + 0.01 && converged(t) && t.final_residual < 1e-6 &&
                      std::abs(t.fixed_point->coords[0]) < 1e-5;
      add("example-3-5.a=" + fmt(a), "S_a: orbit constant <= 3a, Lifschitz iteration reaches 0",
          "k_orbit=" + fmt(est.value) + ", lifschitz " + std::string(outcome_name(t.outcome)) +
              " residual " + fmt(t.final_residual),
          "k_orbit <= " + fmt(3.0 * a + 0.01) + ", converged residual < 1e-6", ok);
    }
  }

  void square_map() {
    auto space = std::make_shared<IntervalSpace>(0.0, 1.0);
    Action a(space, {maps::square()}, CompositionLaw::Single);
    SamplePlan p = plan(44);
    p.pairs = 20000;
    p.horizon = 32;
    const auto star = check_star(a, 1.0, p);
    add("example-4-4.star", "square map: condition (star) at k=1",
        std::string(star.pass ? "pass" : "fail") + " on " + std::to_string(star.gated_pairs) +
            " gated pairs, worst margin " + fmt(star.worst_margin),
        "pass on >= 10000 gated pairs", star.pass && star.gated_pairs >= 10000);
    SamplePlan w;
    w.seed = p.seed;
    w.pairs = 0;
    w.anchors = false;
    w.horizon = 32;
    for (double y : {0.9, 0.99, 0.999, 0.9999}) {
      w.explicit_pairs.push_back({Point::scalar(y / 2.0), Point::scalar(y)});
    }
    const auto est = estimate_orbit(a, w);
    add("example-4-4.orbit_ratio", "square map: orbit ratios on (y/2, y) approach 2",
        "max ratio " + fmt(est.value) + " at " + pair_string(est.x, est.y), "> 1.9", est.value > 1.9);
    SolverConfig cfg;
    cfg.seed = split_seed(opt_.seed, 441);
    const auto t = orbit_center_iteration(a, Point::scalar(0.9), cfg);
    add("example-4-4.orbit_center", "square map: orbit-center iteration reaches 0",
        std::string(outcome_name(t.outcome)) + " at " +
            (t.fixed_point ? format_point(*t.fixed_point) : std::string("-")),
        "converged to 0",
        converged(t) && std::abs(t.fixed_point->coords[0]) < 1e-6);
  }

  void shift() {
    for (double pexp : {1.0, 2.0, 4.0}) {
      auto space = std::make_shared<LpSpace>(8, pexp);
      Action a(space, {maps::shift_lp(8)}, CompositionLaw::Single);
      SamplePlan p = plan(47);
      p.anchors = false;
      p.horizon = 32;
      p.words = 16;
      p.fixed_x = Point(std::vector<double>(8, 0.0));
      const auto est = estimate_strong(a, p);
      const double expect = std::pow(2.0, 1.0 / pexp);
      SolverConfig cfg;
      cfg.k = expect;
      cfg.seed = split_seed(opt_.seed, 471);
      const Point x0(std::vector<double>(8, 0.0));
      const auto oc = solver_outcome([&] { return orbit_center_iteration(a, x0, cfg); });
      const auto lf = solver_outcome([&] { return lifschitz_iteration(a, x0, cfg); });
      add("example-4-7.p=" + fmt(pexp), "l_p shift, N=8: strong constant 2^(1/p), no fixed point",
          "k_strong=" + fmt(est.value) + ", orbit_center " + oc + ", lifschitz " + lf,
          fmt(expect) + " +- 0.02, neither converged",
          std::abs(est.value - expect) <= 0.02 && oc != "converged" && lf != "converged");
    }
  }

  void prus() {
    auto space = std::make_shared<EventuallyConstSeqSpace>();
    Action a(space, {maps::prus()}, CompositionLaw::Single);
    const auto& T = a.generator(0);
    Rng rng(split_seed(opt_.seed, 58));
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const Point x = space->sample(rng), y = space->sample(rng);
      worst = std::max(worst, std::abs(space->distance(T.apply(x), T.apply(y)) - space->distance(x, y)));
    }
    add("remark-5-8.isometry", "Prus map: isometry on 10^4 sampled pairs",
        "max |d(Tx,Ty) - d(x,y)| = " + fmt(worst), "<= 1e-12", worst <= 1e-12);
    const Point zero = EventuallyConstSeqSpace::constant(0.0);
    Point p = zero;
    double far = 0.0;
    for (int n = 0; n < 2000; ++n) {
      p = T.apply(p);
      far = std::max(far, space->distance(zero, p));
    }
    add("remark-5-8.orbit_bound", "Prus map: orbit of 0 stays in the unit ball",
        "sup_n d(0, T^n 0) = " + fmt(far) + " over 2000 iterates", "<= 1", far <= 1.0);
    SolverConfig cfg;
    cfg.seed = split_seed(opt_.seed, 581);
    const auto t = orbit_center_iteration(a, zero, cfg);
    double low = INFINITY;
    for (std::size_t j = 0; j < t.steps.size() && j <= 200; ++j) low = std::min(low, t.steps[j].residual);
    add("remark-5-8.residual", "Prus map: orbit-center residuals stay away from 0",
        std::string(outcome_name(t.outcome)) + ", min residual " + fmt(low) + " over " +
            std::to_string(t.steps.size()) + " iterates",
        "min residual >= 0.9 for j <= 200", low >= 0.9 && t.steps.size() >= 201);
  }

  void kappa() {
    const std::size_t budget = opt_.kappa_budget;
    {
      IntervalSpace s(0.0, 1.0);
      const auto b = estimate_kappa(s, budget, split_seed(opt_.seed, 221));
      add("remark-2-2.kappa.interval", "Lifschitz characteristic of the real line",
          "[" + fmt(b.lower) + ", " + fmt(b.upper) + "]", "lower >= 1.8, upper = 2",
          b.lower >= 1.8 && b.upper == 2.0);
    }
    {
      EuclideanSpace s(2, 1.0);
      const auto b = estimate_kappa(s, budget, split_seed(opt_.seed, 222));
      add("remark-2-2.kappa.euclidean2", "Lifschitz characteristic of a Hilbert space",
          "[" + fmt(b.lower) + ", " + fmt(b.upper) + "]", "contains 1.414, width <= 0.25",
          b.lower <= 1.414 && b.upper >= 1.414 && b.upper - b.lower <= 0.25);
    }
    {
      auto s = MaxNormSpace::cube(2, 0.0, 1.0);
      const auto b = estimate_kappa(s, budget, split_seed(opt_.seed, 223));
      const bool replay = b.falsifier && replay_falsifier(s, *b.falsifier, b.upper);
      add("remark-2-2.kappa.maxnorm2", "Lifschitz characteristic of the max-norm plane",
          "[" + fmt(b.lower) + ", " + fmt(b.upper) + "], falsifier " + (replay ? "replays" : "missing"),
          "upper <= 1.1 with a replayable falsifier", b.upper <= 1.1 && replay);
    }
  }

  void normal() {
    const std::size_t n = opt_.normal_sets;
    {
      IntervalSpace s(0.0, 1.0);
      const auto e = estimate_normal_coeff(s, n, split_seed(opt_.seed, 581));
      add("normal.interval", "normal structure coefficient of the line", fmt(e.value),
          "in [0.48, 0.52]", e.value >= 0.48 && e.value <= 0.52);
    }
    {
      auto s = MaxNormSpace::cube(3, 0.0, 1.0);
      const auto e = estimate_normal_coeff(s, n, split_seed(opt_.seed, 582));
      add("normal.maxnorm3", "normal structure coefficient of max-norm R^3", fmt(e.value),
          "in [0.48, 0.52]", e.value >= 0.48 && e.value <= 0.52);
    }
    {
      EuclideanSpace s(2, 1.0);
      const auto e = estimate_normal_coeff(s, n, split_seed(opt_.seed, 583));
      add("normal.euclidean2", "normal structure coefficient of the Euclidean plane", fmt(e.value),
          ">= 0.55", e.value >= 0.55 && e.value <= 1.0);
    }
  }

  void hierarchy() {
    struct Case {
      std::string name;
      MetricSpaceHandle space;
      std::vector<GeneratorMap> gens;
      CompositionLaw law;
      int horizon;
    };
    auto unit = std::make_shared<IntervalSpace>(0.0, 1.0);
    auto sym = std::make_shared<IntervalSpace>(-1.0, 1.0);
    auto disc = std::make_shared<EuclideanSpace>(2, 1.0);
    std::vector<Case> cases{
        {"identity", unit, {maps::identity()}, CompositionLaw::Single, 16},
        {"sa", sym, {maps::sa(0.5)}, CompositionLaw::Single, 16},
        {"square", unit, {maps::square()}, CompositionLaw::Single, 16},
        {"step", unit, {maps::step()}, CompositionLaw::Single, 16},
        {"contraction", unit, {maps::contraction(0.5, {0.0})}, CompositionLaw::Single, 16},
        {"shift_lp", std::make_shared<LpSpace>(8, 2.0), {maps::shift_lp(8)}, CompositionLaw::Single, 16},
        {"prus", std::make_shared<EventuallyConstSeqSpace>(), {maps::prus()}, CompositionLaw::Single, 16},
        {"rotation", disc, {maps::rotation(1.0)}, CompositionLaw::Single, 16},
        {"reflection", disc, {maps::reflection(0.3)}, CompositionLaw::Single, 16},
        {"rotation+rotation", disc, {maps::rotation(1.0), maps::rotation(0.5)},
         CompositionLaw::Commuting, 8},
        {"rotation+reflection", disc, {maps::rotation(1.0), maps::reflection(0.3)},
         CompositionLaw::Free, 4},
    };
    std::uint64_t stream = 300;
    for (const auto& c : cases) {
      Action a(c.space, c.gens, c.law, c.horizon, split_seed(opt_.seed, stream));
      SamplePlan p = plan(stream++);
      p.pairs = 128;
      p.horizon = c.horizon;
      p.words = 16;
      p.max_anchor_pairs = 1024;
      const auto rep = analyze(a, p);
      const auto h = check_hierarchy(rep, a);
      add("hierarchy." + c.name, "k_orbit <= k_uniform; k_strong <= k_orbit when the law commutes",
          "uniform " + fmt(rep.uniform.value) + ", orbit " + fmt(rep.orbit.value) + ", strong " +
              fmt(rep.strong.value) + (h.strong_checked ? "" : " (strong not compared)"),
          "ordered within 1e-9", h.pass);
    }
  }

  // D_j <= N k_strong^2 D_{j-1} + 0.05 on converged orbit-center runs with N k_strong^2 < 1.
  void contraction() {
    auto sym = std::make_shared<IntervalSpace>(-1.0, 1.0);
    auto unit = std::make_shared<IntervalSpace>(0.0, 1.0);
    const double n = estimate_normal_coeff(*unit, opt_.normal_sets, split_seed(opt_.seed, 590)).value;
    struct Case {
      std::string name;
      MetricSpaceHandle space;
      GeneratorMap map;
      Point x0;
    };
    std::vector<Case> cases{
        {"sa(0.25)", sym, maps::sa(0.25), Point::scalar(0.7)},
        {"sa(0.5)", sym, maps::sa(0.5), Point::scalar(0.7)},
        {"square", unit, maps::square(), Point::scalar(0.9)},
        {"contraction", unit, maps::contraction(0.5, {0.25}), Point::scalar(0.9)},
    };
    std::uint64_t stream = 400;
    for (const auto& c : cases) {
      Action a(c.space, {c.map}, CompositionLaw::Single);
      SamplePlan p = plan(stream);
      p.pairs = 128;
      p.horizon = 16;
      const double ks = estimate_strong(a, p).value;
      const double bound = n * ks * ks;
      SolverConfig cfg;
      cfg.seed = split_seed(opt_.seed, stream++);
      const auto t = orbit_center_iteration(a, c.x0, cfg);
      double worst = 0.0;
      for (const auto& st : t.steps) {
        if (std::isfinite(st.contraction)) worst = std::max(worst, st.contraction);
      }
      const bool applies = converged(t) && bound < 1.0;
      add("contraction." + c.name, "orbit-center contraction ratios D_j/D_{j-1} <= N k_strong^2 + 0.05",
          std::string(outcome_name(t.outcome)) + ", N k_strong^2 = " + fmt(bound) + ", max ratio " +
              fmt(worst) + (applies ? "" : " (not applicable)"),
          "<= " + fmt(bound + 0.05) + " when converged and N k_strong^2 < 1",
          !applies || worst <= bound + 0.05);
    }
  }

  ReproOptions opt_;
  std::vector<ReproRow> rows_;
};

}  // namespace

std::vector<ReproRow> run_repro(const ReproOptions& options) { return Repro(options).run(); }

CsvTable repro_table(const std::vector<ReproRow>& rows) {
  CsvTable t({"id", "description", "measured", "expected", "pass"});
  for (const auto& r : rows) t.add({r.id, r.description, r.measured, r.expected, r.pass ? "pass" : "fail"});
  return t;
}

}  // namespace ofl
