#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ofl/actions.hpp"

namespace ofl {

struct PointPair {
  Point x, y;
};

// Sampling controls shared by every estimator. Orbits are truncated at word length H,
// o_H(y) = {v y : |v| <= H}; each pair (x, y) also contributes (x, u y) for |u| <= M.
// Pairs are taken in the order: explicit pairs, anchor pairs, random pairs; witnesses
// are the first pair attaining the maximum.
struct SamplePlan {
  std::uint64_t seed = 1;
  std::size_t pairs = 256;   // random pairs
  int horizon = 64;          // H
  std::size_t words = 32;    // sampled words s
  int window = 0;            // M; 0 means H
  bool anchors = true;
  std::size_t max_anchor_pairs = 4096;
  std::vector<PointPair> explicit_pairs;
  std::optional<Point> fixed_x;  // random pairs use this x when set
  double floor = 1e-9;  // pairs with a denominator below this are skipped
  double tol = 1e-9;
  std::size_t workers = 1;

  int effective_window() const { return window > 0 ? window : horizon; }
};

struct RatioEstimate {
  double value = 0.0;
  std::size_t samples = 0;
  bool has_witness = false;
  Point x, y;  // effective pair
  Word word;   // s
  double numerator = 0.0, denominator = 0.0;
};

struct StarReport {
  double k = 0.0;
  double worst_margin = 0.0;
  std::size_t gated_pairs = 0;
  bool pass = false;
  // no pair passed the gate; pass is then vacuously true
  bool inconclusive = true;
  // truncated inf over t is an over-estimate of the true inf: a pass is conservative,
  // a fail is advisory
  bool advisory = false;
  bool has_witness = false;
  Point x, y;
  Word word;
  double inf_value = 0.0;
  double bound = 0.0;  // k D(x, o(y))
};

struct LipschitzReport {
  std::string action;
  std::string space_id;
  std::string law;
  SamplePlan plan;
  std::size_t base_pairs = 0;
  RatioEstimate uniform, orbit, strong;
  std::vector<StarReport> star;
};

std::vector<PointPair> sample_pairs(const Action& action, const SamplePlan& plan);

RatioEstimate estimate_uniform(const Action& action, const SamplePlan& plan);
RatioEstimate estimate_orbit(const Action& action, const SamplePlan& plan);
RatioEstimate estimate_strong(const Action& action, const SamplePlan& plan);
StarReport check_star(const Action& action, double k, const SamplePlan& plan);

// All three estimates and one star report per k, from a single pass over the pairs.
LipschitzReport analyze(const Action& action, const SamplePlan& plan,
                        const std::vector<double>& star_ks = {});

struct HierarchyCheck {
  bool pass = true;
  bool strong_checked = false;
  std::string detail;
};

// k_orbit <= k_uniform + tol always; k_strong <= k_orbit + tol when `strong_applies`
// (single-generator and verified-commuting actions).
HierarchyCheck check_hierarchy(const LipschitzReport& report, bool strong_applies,
                               double tol = 1e-9);
HierarchyCheck check_hierarchy(const LipschitzReport& report, const Action& action,
                               double tol = 1e-9);

}  // namespace ofl
