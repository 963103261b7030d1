#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ofl/metric_space.hpp"

namespace ofl {

inline const std::vector<double> kMuGrid{0.01, 0.02, 0.03, 0.05, 0.08, 0.1, 0.15, 0.2};
inline const std::vector<double> kAlphaGrid{0.8,  0.85, 0.9,   0.93,  0.95,  0.97,
                                            0.98, 0.99, 0.995, 0.997, 0.998, 0.999};

// A point of B(x,(1+mu)r) ∩ B(y,k(1+mu)r) outside B(z, alpha r).
struct RegularityFailure {
  Point x, y;
  double r = 0.0;
  Point z;
  Point escape;
};

struct RegularityWitness {
  double k = 1.0, mu = 0.0, alpha = 0.0;
  std::size_t configs_tested = 0;
  std::size_t configs_skipped = 0;  // no intersection point found
  // max over tested configurations of max_p d(z, p) / r
  double needed_alpha = 0.0;
  std::vector<RegularityFailure> failures;

  bool pass() const { return failures.empty(); }
};

struct RegularityOptions {
  std::size_t lens_samples = 48;
  int refine_rounds = 24;
  std::size_t max_failures = 8;
  // Stop at the first failure.
  bool stop_early = false;
};

RegularityWitness test_regularity(const MetricSpace& space, double k, double mu, double alpha,
                                  std::size_t n_configs, std::uint64_t seed,
                                  const RegularityOptions& options = {});

// Re-checks a stored failure: escape ∈ B(x,(1+mu)r) ∩ B(y,k(1+mu)r), d(z, escape) > alpha r,
// and z is what the space's oracle (when it accepts) returns for the configuration.
bool replay_failure(const MetricSpace& space, const RegularityFailure& f, double k, double mu,
                    double alpha);

// d(x,y) >= r, p, q ∈ B(x,r) ∩ B(y,k r), d(p,q) >= 2r: certifies kappa <= k for every
// (mu, alpha), not only the grid.
struct FalsifyingConfiguration {
  Point x, y;
  double r = 0.0;
  Point p, q;
  double k_needed = 0.0;
};

bool replay_falsifier(const MetricSpace& space, const FalsifyingConfiguration& f, double k,
                      double tol = 1e-12);

struct KappaBracket {
  double lower = 1.0;
  double upper = 2.0;
  std::size_t budget = 0;
  std::size_t configs_used = 0;
  std::uint64_t seed = 0;
  // grid point that certified `lower`, when lower > 1
  std::optional<double> lower_mu, lower_alpha;
  std::optional<FalsifyingConfiguration> falsifier;
  // sampled failures at the smallest k that failed during the bisection
  std::optional<double> failed_k;
  std::vector<RegularityFailure> failures;
  std::vector<double> mu_grid, alpha_grid;
};

KappaBracket estimate_kappa(const MetricSpace& space, std::size_t budget, std::uint64_t seed);

struct NormalStructureEstimate {
  double value = 0.0;
  std::size_t sets = 0;
  std::size_t skipped = 0;
  std::string generator;
  // the set attaining `value`
  double radius = 0.0, diameter = 0.0;
  std::vector<Point> generating_points;
};

// density: dense-sample size per set (0 picks a per-cover default).
NormalStructureEstimate estimate_normal_coeff(const MetricSpace& space, std::size_t n_sets,
                                              std::uint64_t seed, std::size_t density = 0);

}  // namespace ofl
