#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ofl/actions.hpp"

namespace ofl {

enum class Outcome { Converged, CycleDetected, Diverged, BudgetExhausted };

std::string_view outcome_name(Outcome o);

struct SolverConfig {
  double epsilon = 1e-6;
  int max_iter = 200;
  int horizon = 64;     // H
  int tail_start = 32;  // T0
  double k = 1.0;       // target constant for the Lifschitz iteration
  std::size_t candidates = 64;
  std::uint64_t seed = 1;
  Word picard_word{0};

  void validate() const;
};

struct TraceStep {
  Point x;
  double residual = 0.0;           // max_g d(x, g x)
  double r_est = NAN;              // sampled inf_y D(x, o(y)); Lifschitz only
  double self_orbit_radius = 0.0;  // D(x, o(x))
  double orbit_diameter = 0.0;     // δ(o(x))
  double step_length = NAN;        // d(x_{j+1}, x_j)
  double tail_radius = NAN;        // D_j = D(x_{j+1}, o(T0 x_j)); orbit-center only
  double contraction = NAN;        // D_j / D_{j-1}
  // Lifschitz step data
  double mu = NAN, alpha = NAN;
  Word s0;
};

struct SolverTrace {
  std::string solver;
  std::vector<TraceStep> steps;
  Outcome outcome = Outcome::BudgetExhausted;
  std::optional<Point> fixed_point;
  int cycle_period = 0;
  double final_residual = NAN;
  std::vector<std::string> notes;
};

// max_g d(x, g x)
double residual(const Action& action, const Point& x);

SolverTrace picard(const Action& action, const Point& x0, const SolverConfig& config);
// x_{j+1} = Chebyshev center of the tail orbit {u x_j : T0 <= |u| <= H}.
SolverTrace orbit_center_iteration(const Action& action, const Point& x0,
                                   const SolverConfig& config);
// UnsupportedOperation when the space has no regularity oracle or refuses every mu.
SolverTrace lifschitz_iteration(const Action& action, const Point& x0, const SolverConfig& config);

// Outcome of a finished trace: converged if the last residual is below epsilon, a cycle
// if the last iterate is within epsilon/10 of one of the previous H iterates, diverged if
// the iterates leave the domain bound, else budget exhausted.
Outcome classify_outcome(const Action& action, const SolverTrace& trace, const SolverConfig& config,
                         int* period = nullptr);

}  // namespace ofl
