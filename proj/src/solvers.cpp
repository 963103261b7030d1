#include "ofl/solvers.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "ofl/geometry_constants.hpp"
#include "ofl/metric_core.hpp"

namespace ofl {

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Converged: return "converged";
    case Outcome::CycleDetected: return "cycle_detected";
    case Outcome::Diverged: return "diverged";
    case Outcome::BudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (!(epsilon > 0.0)) throw UsageError("solver: epsilon must be positive");
  if (max_iter < 0) throw UsageError("solver: max_iter must be nonnegative");
  if (horizon < 1) throw UsageError("solver: horizon must be at least 1");
  if (tail_start < 0 || tail_start >= horizon) {
    throw UsageError("solver: tail_start must lie in [0, horizon)");
  }
  if (!(k > 0.0)) throw UsageError("solver: k must be positive");
}

double residual(const Action& action, const Point& x) {
  double r = 0.0;
  for (std::size_t g = 0; g < action.generator_count(); ++g) {
    r = std::max(r, action.space().distance(x, action.generator(g).apply(x)));
  }
  return r;
}

Outcome classify_outcome(const Action& action, const SolverTrace& trace, const SolverConfig& config,
                         int* period) {
  if (trace.steps.empty()) throw UsageError("classify_outcome: empty trace");
  const MetricSpace& space = action.space();
  const auto& last = trace.steps.back();
  if (last.residual < config.epsilon) return Outcome::Converged;
  const std::size_t n = trace.steps.size();
  const std::size_t window = static_cast<std::size_t>(config.horizon);
  for (std::size_t back = 1; back <= std::min(window, n - 1); ++back) {
    if (space.distance(last.x, trace.steps[n - 1 - back].x) < config.epsilon / 10.0) {
      if (period) *period = static_cast<int>(back);
      return Outcome::CycleDetected;
    }
  }
  const double bound = space.diameter_bound();
  if (!space.contains(last.x, 1e-9)) return Outcome::Diverged;
  if (std::isfinite(bound) && last.orbit_diameter > bound + kDefaultTolerance) {
    return Outcome::Diverged;
  }
  if (space.distance(trace.steps.front().x, last.x) > 1e12) return Outcome::Diverged;
  return Outcome::BudgetExhausted;
}

namespace {

void fill_orbit_functionals(const Action& action, const OrbitTable& o, TraceStep& step) {
  const MetricSpace& space = action.space();
  const auto pts = o.points();
  step.self_orbit_radius = sup_distance(space, o.base, std::span<const Point>(pts));
  step.orbit_diameter = diameter(space, std::span<const Point>(pts));
}

// Shared loop: records x_j, stops on a terminal outcome, otherwise asks `advance` for x_{j+1}.
SolverTrace drive(const Action& action, const Point& x0, const SolverConfig& config,
                  std::string name,
                  const std::function<Point(std::size_t, TraceStep&, SolverTrace&, bool&)>& advance) {
  config.validate();
  if (!action.space().contains(x0, 1e-9)) throw UsageError("solver: x0 lies outside the space");
  SolverTrace trace;
  trace.solver = std::move(name);
  Point x = x0;
  for (int j = 0;; ++j) {
    TraceStep step;
    step.x = x;
    step.residual = residual(action, x);
    fill_orbit_functionals(action, orbit(action, x, config.horizon), step);
    trace.steps.push_back(step);
    int period = 0;
    Outcome o = classify_outcome(action, trace, config, &period);
    if (o != Outcome::BudgetExhausted || j == config.max_iter) {
      trace.outcome = o;
      trace.cycle_period = period;
      break;
    }
    bool diverged = false;
    Point next = advance(static_cast<std::size_t>(j), trace.steps.back(), trace, diverged);
    trace.steps.back().step_length = action.space().distance(next, x);
    if (diverged) {
      trace.outcome = Outcome::Diverged;
      break;
    }
    x = std::move(next);
  }
  trace.final_residual = trace.steps.back().residual;
  if (trace.outcome == Outcome::Converged) trace.fixed_point = trace.steps.back().x;
  return trace;
}

}  // namespace

SolverTrace picard(const Action& action, const Point& x0, const SolverConfig& config) {
  const Word w = action.canonical(config.picard_word);
  if (w.empty()) throw UsageError("picard: empty word");
  auto trace = drive(action, x0, config, "picard",
                     [&](std::size_t, TraceStep& step, SolverTrace&, bool&) {
                       return action.evaluate(w, step.x);
                     });
  trace.notes.push_back("word " + word_to_string(w));
  return trace;
}

SolverTrace orbit_center_iteration(const Action& action, const Point& x0,
                                   const SolverConfig& config) {
  const MetricSpace& space = action.space();
  if (!space.has_center_oracle()) {
    throw UnsupportedOperation("orbit_center_iteration: " + space.id() + " has no center oracle");
  }
  if (!PreorderPolicy(action.law(), action.generator_count()).is_total()) {
    throw UnsupportedOperation("orbit_center_iteration: the preorder of " + action.name() +
                               " is not total");
  }
  const bool asymptotic =
      action.law() == CompositionLaw::Single && static_cast<bool>(action.generator(0).asymptotic_center);
  double previous_tail = NAN;
  auto trace = drive(action, x0, config, "orbit_center",
                     [&](std::size_t, TraceStep& step, SolverTrace&, bool&) {
                       const auto tail = tail_orbit(action, step.x, config.tail_start, config.horizon);
                       const auto pts = tail.points();
                       Point next = asymptotic
                                        ? action.generator(0).asymptotic_center(step.x)
                                        : space.center(PointSet{space.id(), pts}).point;
                       step.tail_radius = sup_distance(space, next, std::span<const Point>(pts));
                       if (std::isfinite(previous_tail) && previous_tail > 0.0) {
                         step.contraction = step.tail_radius / previous_tail;
                       }
                       previous_tail = step.tail_radius;
                       return next;
                     });
  trace.notes.push_back("tail start " + std::to_string(config.tail_start) + ", horizon " +
                        std::to_string(config.horizon));
  if (asymptotic) trace.notes.push_back("center: closed-form asymptotic center of the tail orbits");
  return trace;
}

SolverTrace lifschitz_iteration(const Action& action, const Point& x0, const SolverConfig& config) {
  const MetricSpace& space = action.space();
  if (!space.has_regularity_oracle()) {
    throw UnsupportedOperation("lifschitz_iteration: " + space.id() + " has no regularity oracle");
  }
  const double k0 = std::max(config.k, 1.0);
  double previous_r = NAN;
  int increases = 0;
  std::vector<Point> history;
  auto trace = drive(
      action, x0, config, "lifschitz",
      [&](std::size_t j, TraceStep& step, SolverTrace&, bool& diverged) {
        const Point& x = step.x;
        const auto ox = orbit(action, x, config.horizon);
        std::vector<Point> candidates = ox.points();
        candidates.insert(candidates.end(), history.begin(), history.end());
        Rng rng(split_seed(config.seed, j));
        for (std::size_t i = 0; i < config.candidates; ++i) candidates.push_back(space.sample(rng));
        double r = INFINITY;
        for (const auto& y : candidates) {
          const auto oy = orbit(action, y, config.horizon).points();
          r = std::min(r, sup_distance(space, x, std::span<const Point>(oy)));
        }
        step.r_est = r;
        history.push_back(x);

        std::size_t s_index = 0;
        double far = -1.0;
        for (std::size_t i = 1; i < ox.entries.size(); ++i) {
          const double d = space.distance(x, ox.entries[i].point);
          if (d > far) {
            far = d;
            s_index = i;
          }
        }
        step.s0 = ox.entries[s_index].word;
        const Point& sx = ox.entries[s_index].point;
        if (!(r > 0.0)) return x;

        if (std::isfinite(previous_r) && r > previous_r * (1.0 + 1e-9) + kDefaultTolerance) {
          if (++increases >= 3) diverged = true;
        } else {
          increases = 0;
        }
        previous_r = r;

        for (double mu : kMuGrid) {
          if (far < (1.0 - mu) * r) continue;
          if (auto res = regularity_oracle(space, x, sx, r, k0, mu)) {
            step.mu = mu;
            step.alpha = res->alpha;
            return res->z;
          }
        }
        throw UnsupportedOperation("lifschitz_iteration: " + space.id() +
                                   " refuses the regularity oracle at k=" + format_number(k0));
      });
  trace.notes.push_back("k0 = " + format_number(k0));
  trace.notes.push_back("single route through the regularity oracle with the worst displacement s0");
  return trace;
}

}  // namespace ofl
