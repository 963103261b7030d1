#include "ofl/geometry_constants.hpp"

#include <algorithm>
#include <cmath>

#include "ofl/metric_core.hpp"
#include "ofl/spaces.hpp"
#include "spaces/common.hpp"

namespace ofl {
namespace {

bool linear(const MetricSpace& space) {
  switch (space.kind()) {
    case SpaceKind::Interval:
    case SpaceKind::MaxNorm:
    case SpaceKind::Euclidean:
    case SpaceKind::Lp:
      return true;
    default:
      return false;
  }
}

Point domain_center(const MetricSpace& space) {
  switch (space.kind()) {
    case SpaceKind::Interval: {
      const auto& s = static_cast<const IntervalSpace&>(space);
      return Point::scalar(0.5 * (s.lower() + s.upper()));
    }
    case SpaceKind::MaxNorm: {
      const auto& s = static_cast<const MaxNormSpace&>(space);
      std::vector<double> c(s.dimension());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (s.lower()[i] + s.upper()[i]);
      return Point(std::move(c));
    }
    case SpaceKind::Euclidean:
      return Point(static_cast<const EuclideanSpace&>(space).domain_center());
    case SpaceKind::Lp:
      return Point(std::vector<double>(space.dimension(), 0.0));
    case SpaceKind::EventuallyConstant:
      return EventuallyConstSeqSpace::constant(0.0);
    case SpaceKind::Tree:
      break;
  }
  const auto anchors = space.anchors();
  if (space.has_center_oracle() && !anchors.empty()) {
    return space.center(PointSet{space.id(), anchors}).point;
  }
  Rng rng(1);
  return space.sample(rng);
}

double working_diameter(const MetricSpace& space) {
  const double d = space.diameter_bound();
  return std::isfinite(d) ? d : 2.0;
}

// x + t u / |u|
Point offset(const MetricSpace& space, const Point& x, const std::vector<double>& u, double t) {
  const double n = space.distance(Point(u), Point(std::vector<double>(u.size(), 0.0)));
  std::vector<double> c = x.coords;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += t * u[i] / n;
  return Point(std::move(c));
}

struct Config {
  Point x, y;
  double r = 0.0;
};

std::optional<Config> draw_config(const MetricSpace& space, double k, double mu, std::size_t index,
                                  Rng& rng) {
  const double diam = working_diameter(space);
  const bool lin = linear(space);
  const auto probes = lin ? spaces_detail::probe_directions(space.dimension(), 0)
                          : std::vector<std::vector<double>>{};
  if (lin && index < probes.size()) {
    Config c;
    c.x = domain_center(space);
    c.r = diam / 8.0;
    c.y = offset(space, c.x, probes[index], (1.0 - mu) * c.r);
    if (space.contains(c.y)) return c;
  }
  for (int attempt = 0; attempt < 16; ++attempt) {
    Config c;
    c.x = space.sample(rng);
    c.r = std::exp(uniform(rng, std::log(0.01), std::log(diam)));
    const double dmin = (1.0 - mu) * c.r;
    const double dmax = (1.0 + k) * (1.0 + mu) * c.r;
    if (lin) {
      const double d = rng() % 2 == 0 ? dmin : uniform(rng, dmin, dmax);
      c.y = offset(space, c.x, spaces_detail::gaussian_direction(space.dimension(), rng), d);
      if (!space.contains(c.y)) continue;
    } else {
      c.y = space.sample_ball(c.x, dmax, rng);
      if (space.distance(c.x, c.y) < dmin) continue;
    }
    return c;
  }
  return std::nullopt;
}

bool in_lens(const MetricSpace& space, const Point& p, const Point& x, const Point& y, double r1,
             double r2) {
  const double eps = 1e-12 * std::max(1.0, r2);
  return space.distance(x, p) <= r1 + eps && space.distance(y, p) <= r2 + eps;
}

Point fallback_center(const MetricSpace& space, const std::vector<Point>& pts) {
  if (space.has_center_oracle()) return space.center(PointSet{space.id(), pts}).point;
  std::size_t best = 0;
  double best_d = INFINITY;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = sup_distance(space, pts[i], std::span<const Point>(pts));
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return pts[best];
}

Point select_center(const MetricSpace& space, const Config& c, double k, double mu,
                    const std::vector<Point>& lens) {
  if (space.has_regularity_oracle()) {
    if (auto res = space.regularity(c.x, c.y, c.r, k, mu)) return res->z;
  }
  return fallback_center(space, lens);
}

struct Probe {
  bool empty = true;
  Point z;
  Point far;
  double ratio = 0.0;  // d(z, far) / r
};

Probe probe_config(const MetricSpace& space, const Config& c, double k, double mu,
                   const RegularityOptions& opt, Rng& rng) {
  const double r1 = (1.0 + mu) * c.r, r2 = k * (1.0 + mu) * c.r;
  std::vector<Point> lens;
  for (std::size_t a = 0; a < 4 * opt.lens_samples && lens.size() < opt.lens_samples; ++a) {
    Point p = a % 2 == 0 ? space.sample_ball(c.x, r1, rng) : space.sample_ball(c.y, r2, rng);
    if (in_lens(space, p, c.x, c.y, r1, r2)) lens.push_back(std::move(p));
  }
  Probe out;
  if (lens.empty()) return out;
  out.empty = false;
  out.z = select_center(space, c, k, mu, lens);
  double best = -1.0;
  for (const auto& p : lens) {
    const double d = space.distance(out.z, p);
    if (d > best) {
      best = d;
      out.far = p;
    }
  }
  double step = 0.25 * r1;
  for (int round = 0; round < opt.refine_rounds; ++round) {
    bool improved = false;
    for (int j = 0; j < 8; ++j) {
      Point p = space.sample_ball(out.far, step, rng);
      if (!in_lens(space, p, c.x, c.y, r1, r2)) continue;
      const double d = space.distance(out.z, p);
      if (d > best) {
        best = d;
        out.far = std::move(p);
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  out.ratio = best / c.r;
  return out;
}

struct Certificate {
  bool found = false;
  FalsifyingConfiguration f;
};

Certificate search_certificate(const MetricSpace& space, std::size_t n_random, Rng& rng) {
  Certificate best;
  if (!linear(space)) return best;
  const std::size_t n = space.dimension();
  const Point x = domain_center(space);
  const double r = working_diameter(space) / 4.0;
  auto dirs = spaces_detail::probe_directions(n, 8);
  auto consider = [&](const std::vector<double>& u, const std::vector<double>& v) {
    FalsifyingConfiguration f;
    f.x = x;
    f.r = r;
    f.p = offset(space, x, u, r);
    f.q = offset(space, x, u, -r);
    f.y = offset(space, x, v, r);
    if (!space.contains(f.p) || !space.contains(f.q) || !space.contains(f.y)) return;
    if (space.distance(f.p, f.q) < 2.0 * r * (1.0 - 1e-12)) return;
    if (space.distance(f.x, f.y) < r * (1.0 - 1e-12)) return;
    f.k_needed = std::max(space.distance(f.y, f.p), space.distance(f.y, f.q)) / r;
    if (!best.found || f.k_needed < best.f.k_needed) {
      best.found = true;
      best.f = std::move(f);
    }
  };
  for (const auto& u : dirs) {
    for (const auto& v : dirs) consider(u, v);
  }
  for (std::size_t i = 0; i < n_random; ++i) {
    consider(spaces_detail::gaussian_direction(n, rng), spaces_detail::gaussian_direction(n, rng));
  }
  return best;
}

}  // namespace

RegularityWitness test_regularity(const MetricSpace& space, double k, double mu, double alpha,
                                  std::size_t n_configs, std::uint64_t seed,
                                  const RegularityOptions& options) {
  if (!(k >= 1.0)) throw std::domain_error("test_regularity: k must be at least 1");
  if (!(mu > 0.0 && mu < 1.0) || !(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("test_regularity: mu and alpha must lie in (0,1)");
  }
  RegularityWitness w;
  w.k = k;
  w.mu = mu;
  w.alpha = alpha;
  for (std::size_t i = 0; i < n_configs; ++i) {
    Rng rng(split_seed(seed, i));
    const auto c = draw_config(space, k, mu, i, rng);
    ++w.configs_tested;
    if (!c) {
      ++w.configs_skipped;
      continue;
    }
    const Probe p = probe_config(space, *c, k, mu, options, rng);
    if (p.empty) {
      ++w.configs_skipped;
      continue;
    }
    w.needed_alpha = std::max(w.needed_alpha, p.ratio);
    if (p.ratio > alpha) {
      if (w.failures.size() < options.max_failures) {
        w.failures.push_back({c->x, c->y, c->r, p.z, p.far});
      }
      if (options.stop_early) break;
    }
  }
  return w;
}

bool replay_failure(const MetricSpace& space, const RegularityFailure& f, double k, double mu,
                    double alpha) {
  const double r1 = (1.0 + mu) * f.r, r2 = k * (1.0 + mu) * f.r;
  if (!in_lens(space, f.escape, f.x, f.y, r1, r2)) return false;
  if (space.has_regularity_oracle()) {
    if (auto res = space.regularity(f.x, f.y, f.r, k, mu)) {
      if (space.distance(res->z, f.z) > 1e-12) return false;
    }
  }
  return space.distance(f.z, f.escape) > alpha * f.r;
}

bool replay_falsifier(const MetricSpace& space, const FalsifyingConfiguration& f, double k,
                      double tol) {
  const double r = f.r;
  if (!(r > 0.0)) return false;
  const double slack = tol * std::max(1.0, r);
  return space.distance(f.x, f.y) >= r - slack && space.distance(f.x, f.p) <= r + slack &&
         space.distance(f.x, f.q) <= r + slack && space.distance(f.y, f.p) <= k * r + slack &&
         space.distance(f.y, f.q) <= k * r + slack && space.distance(f.p, f.q) >= 2.0 * r - slack;
}

KappaBracket estimate_kappa(const MetricSpace& space, std::size_t budget, std::uint64_t seed) {
  KappaBracket b;
  b.budget = budget;
  b.seed = seed;
  b.mu_grid = kMuGrid;
  b.alpha_grid = kAlphaGrid;
  {
    Rng rng(split_seed(seed, 0xce57));
    const auto cert = search_certificate(space, std::min<std::size_t>(budget / 10, 4096), rng);
    if (cert.found && cert.f.k_needed <= 2.0) {
      b.upper = std::max(1.0, cert.f.k_needed);
      b.falsifier = cert.f;
    }
  }
  double lo = 1.0, hi = b.upper;
  const double resolution = 0.005;
  const int steps = hi - lo > resolution
                        ? static_cast<int>(std::ceil(std::log2((hi - lo) / resolution)))
                        : 0;
  const std::size_t per_batch =
      steps > 0 ? std::max<std::size_t>(256, budget / (4 * static_cast<std::size_t>(steps))) : 0;
  RegularityOptions opt;
  opt.stop_early = true;
  std::uint64_t batch = 1;
  for (int step = 0; step < steps && b.configs_used < budget; ++step) {
    const double mid = 0.5 * (lo + hi);
    bool pass = false;
    RegularityWitness first_fail;
    bool have_fail = false;
    for (double mu : kMuGrid) {
      if (b.configs_used >= budget) break;
      const std::size_t n = std::min(per_batch, budget - b.configs_used);
      auto w = test_regularity(space, mid, mu, kAlphaGrid.back(), n, split_seed(seed, batch++), opt);
      b.configs_used += w.configs_tested;
      if (w.pass() && w.configs_tested == n) {
        pass = true;
        b.lower_mu = mu;
        b.lower_alpha = kAlphaGrid.back();
        for (double a : kAlphaGrid) {
          if (a >= w.needed_alpha) {
            b.lower_alpha = a;
            break;
          }
        }
        break;
      }
      if (!have_fail && !w.pass()) {
        first_fail = std::move(w);
        have_fail = true;
      }
    }
    if (pass) {
      lo = mid;
    } else {
      hi = mid;
      if (have_fail && (!b.failed_k || mid < *b.failed_k)) {
        b.failed_k = mid;
        b.failures = first_fail.failures;
      }
    }
  }
  b.lower = std::min(lo, b.upper);
  if (b.lower == 1.0) {
    b.lower_mu.reset();
    b.lower_alpha.reset();
  }
  return b;
}

namespace {

std::vector<Point> lattice(const CoverDescriptor& cov, std::size_t density, Rng& rng) {
  std::vector<double> lo = cov.lo, hi = cov.hi;
  if (cov.has_tail) {
    lo.push_back(cov.tail_lo);
    hi.push_back(cov.tail_hi);
  }
  const std::size_t dims = lo.size();
  auto make = [&](std::vector<double> v) {
    if (!cov.has_tail) return Point(std::move(v));
    const double t = v.back();
    v.pop_back();
    return Point(std::move(v), t);
  };
  std::size_t m = dims == 1 ? 65 : 3;
  if (dims > 1) {
    while (std::pow(static_cast<double>(m + 2), static_cast<double>(dims)) <= 1000.0) m += 2;
  }
  const double total = std::pow(static_cast<double>(m), static_cast<double>(dims));
  std::vector<Point> out;
  if (total <= 4096.0) {
    std::vector<std::size_t> idx(dims, 0);
    while (true) {
      std::vector<double> v(dims);
      for (std::size_t i = 0; i < dims; ++i) {
        v[i] = lo[i] + (hi[i] - lo[i]) * static_cast<double>(idx[i]) / static_cast<double>(m - 1);
      }
      out.push_back(make(std::move(v)));
      std::size_t i = 0;
      while (i < dims && ++idx[i] == m) idx[i++] = 0;
      if (i == dims) break;
    }
    return out;
  }
  std::vector<double> mid(dims);
  for (std::size_t i = 0; i < dims; ++i) mid[i] = 0.5 * (lo[i] + hi[i]);
  out.push_back(make(mid));
  const std::size_t n = density == 0 ? 1024 : density;
  while (out.size() < n) {
    std::vector<double> v(dims);
    for (std::size_t i = 0; i < dims; ++i) v[i] = uniform(rng, lo[i], hi[i]);
    out.push_back(make(std::move(v)));
  }
  return out;
}

std::vector<Point> dense_sample(const MetricSpace& space, const CoverDescriptor& cov,
                                const PointSet& a, std::size_t density, Rng& rng) {
  using Kind = CoverDescriptor::Kind;
  switch (cov.kind) {
    case Kind::Point:
      return {cov.point};
    case Kind::Interval: {
      const std::size_t m = density == 0 ? 65 : density;
      std::vector<Point> out;
      for (std::size_t i = 0; i < m; ++i) {
        const double t = m == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(m - 1);
        out.push_back(Point::scalar(cov.lo[0] + t * (cov.hi[0] - cov.lo[0])));
      }
      return out;
    }
    case Kind::Box:
      return lattice(cov, density, rng);
    case Kind::BallFamily:
      break;
  }
  const std::size_t n = density == 0 ? 1024 : density;
  const auto smallest = std::min_element(cov.balls.begin(), cov.balls.end(),
                                         [](const BallSpec& p, const BallSpec& q) {
                                           return p.radius < q.radius;
                                         });
  std::vector<Point> out = a.points;
  if (smallest == cov.balls.end()) return out;
  for (std::size_t attempt = 0; attempt < 64 * n && out.size() < n; ++attempt) {
    Point p = space.sample_ball(smallest->center, smallest->radius, rng);
    if (cov.contains(space, p, 1e-12)) out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::vector<Point>> seed_sets(const MetricSpace& space) {
  std::vector<std::vector<Point>> out;
  const bool hilbert =
      space.kind() == SpaceKind::Euclidean ||
      (space.kind() == SpaceKind::Lp && static_cast<const LpSpace&>(space).exponent() == 2.0);
  if (!hilbert || space.dimension() < 2) return out;
  const Point c = domain_center(space);
  const double s = working_diameter(space) / 128.0;
  std::vector<Point> tri;
  for (int i = 0; i < 3; ++i) {
    const double t = M_PI / 2.0 + 2.0 * M_PI * i / 3.0;
    std::vector<double> v = c.coords;
    v[0] += s / std::sqrt(3.0) * std::cos(t);
    v[1] += s / std::sqrt(3.0) * std::sin(t);
    tri.push_back(Point(std::move(v)));
  }
  out.push_back(std::move(tri));
  return out;
}

}  // namespace

NormalStructureEstimate estimate_normal_coeff(const MetricSpace& space, std::size_t n_sets,
                                              std::uint64_t seed, std::size_t density) {
  if (!space.has_cover_oracle()) {
    throw UnsupportedOperation("estimate_normal_coeff: " + space.id() + " has no cover oracle");
  }
  if (n_sets == 0) throw UsageError("estimate_normal_coeff: need at least one set");
  NormalStructureEstimate est;
  auto sets = seed_sets(space);
  const bool clustered = space.kind() == SpaceKind::Euclidean || space.kind() == SpaceKind::Lp;
  est.generator = std::string(sets.empty() ? "" : "equilateral seed, ") + "random " +
                  (clustered ? "clusters" : "sets") + " of 2-4 points, cover sampled " +
                  (density == 0 ? "at default density" : "at density " + std::to_string(density));
  const double cluster = working_diameter(space) / 128.0;
  for (std::size_t i = 0; sets.size() < n_sets; ++i) {
    Rng rng(split_seed(seed, i));
    std::vector<Point> pts;
    const std::size_t m = 2 + i % 3;
    const Point c0 = space.sample(rng);
    for (std::size_t j = 0; j < m; ++j) {
      pts.push_back(clustered ? space.sample_ball(c0, cluster, rng) : space.sample(rng));
    }
    sets.push_back(std::move(pts));
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    Rng rng(split_seed(seed, 0x10000 + i));
    const PointSet a{space.id(), sets[i]};
    const CoverDescriptor cov = admissible_cover(space, a);
    const auto pts = dense_sample(space, cov, a, density, rng);
    const double delta = diameter(space, std::span<const Point>(pts));
    if (delta < kDefaultTolerance) {
      ++est.skipped;
      continue;
    }
    const double radius = inner_radius(space, std::span<const Point>(pts));
    ++est.sets;
    const double ratio = radius / delta;
    if (ratio > est.value) {
      est.value = ratio;
      est.radius = radius;
      est.diameter = delta;
      est.generating_points = sets[i];
    }
  }
  return est;
}

}  // namespace ofl
