#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "common.hpp"
#include "ofl/spaces.hpp"

namespace ofl {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

}  // namespace

TreeSpace::TreeSpace(std::size_t vertices, std::vector<Edge> edges)
    : vertex_count_(vertices), edges_(std::move(edges)) {
  const std::size_t n = vertex_count_;
  if (n < 2) throw UsageError("tree: need at least two vertices");
  if (edges_.size() != n - 1) throw UsageError("tree: a tree on n vertices has n-1 edges");
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& ed = edges_[e];
    if (ed.u >= n || ed.v >= n || ed.u == ed.v) throw UsageError("tree: bad edge endpoints");
    if (!(ed.length > 0.0)) throw UsageError("tree: edge lengths must be positive");
    adj[ed.u].push_back({ed.v, e});
    adj[ed.v].push_back({ed.u, e});
  }
  vdist_.assign(n * n, -1.0);
  next_hop_.assign(n * n, kNone);
  for (std::size_t root = 0; root < n; ++root) {
    std::deque<std::size_t> queue{root};
    vdist_[root * n + root] = 0.0;
    next_hop_[root * n + root] = root;
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      for (const auto& [nb, e] : adj[cur]) {
        if (vdist_[root * n + nb] >= 0.0) continue;
        vdist_[root * n + nb] = vdist_[root * n + cur] + edges_[e].length;
        next_hop_[nb * n + root] = cur;
        queue.push_back(nb);
      }
    }
  }
  for (double d : vdist_) {
    if (d < 0.0) throw UsageError("tree: graph is not connected");
  }
  for (const auto& e : edges_) {
    total_length_ += e.length;
    cumulative_length_.push_back(total_length_);
  }
  diameter_ = *std::max_element(vdist_.begin(), vdist_.end());
  id_ = "tree" + std::to_string(n) + "[";
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (e) id_ += ";";
    id_ += std::to_string(edges_[e].u) + "-" + std::to_string(edges_[e].v) + ":" +
           format_number(edges_[e].length);
  }
  id_ += "]";
}

TreeSpace TreeSpace::default_tree() {
  return TreeSpace(7, {{0, 1, 1.0}, {1, 2, 0.5}, {1, 3, 0.75}, {0, 4, 1.25}, {4, 5, 0.5},
                       {4, 6, 0.6}});
}

Point TreeSpace::vertex_point(std::size_t v) const {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].u == v) return Point({static_cast<double>(e), 0.0});
    if (edges_[e].v == v) return Point({static_cast<double>(e), edges_[e].length});
  }
  throw UsageError("tree: no such vertex");
}

double TreeSpace::distance(const Point& x, const Point& y) const {
  const auto ex = static_cast<std::size_t>(x.coords[0]);
  const auto ey = static_cast<std::size_t>(y.coords[0]);
  const double tx = x.coords[1], ty = y.coords[1];
  if (ex == ey) return std::abs(tx - ty);
  const Edge& a = edges_[ex];
  const Edge& b = edges_[ey];
  const double xa[2] = {tx, a.length - tx};
  const double yb[2] = {ty, b.length - ty};
  const std::size_t va[2] = {a.u, a.v};
  const std::size_t vb[2] = {b.u, b.v};
  double best = INFINITY;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      best = std::min(best, xa[i] + vertex_distance(va[i], vb[j]) + yb[j]);
    }
  }
  return best;
}

bool TreeSpace::contains(const Point& p, double tol) const {
  if (p.coords.size() != 2) return false;
  const double e = p.coords[0];
  if (e < 0.0 || e != std::floor(e) || e >= static_cast<double>(edges_.size())) return false;
  const double len = edges_[static_cast<std::size_t>(e)].length;
  return p.coords[1] >= -tol && p.coords[1] <= len + tol;
}

Point TreeSpace::walk_vertices(std::size_t a, std::size_t b, double t) const {
  const std::size_t n = vertex_count_;
  std::size_t cur = a;
  while (cur != b) {
    const std::size_t nxt = next_hop_[cur * n + b];
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const Edge& ed = edges_[e];
      const bool fwd = ed.u == cur && ed.v == nxt;
      const bool back = ed.v == cur && ed.u == nxt;
      if (!fwd && !back) continue;
      if (t <= ed.length) {
        return Point({static_cast<double>(e), fwd ? t : ed.length - t});
      }
      t -= ed.length;
      break;
    }
    cur = nxt;
  }
  return vertex_point(b);
}

Point TreeSpace::point_along(const Point& a, const Point& b, double t) const {
  const double d = distance(a, b);
  t = std::clamp(t, 0.0, d);
  const auto ea = static_cast<std::size_t>(a.coords[0]);
  const auto eb = static_cast<std::size_t>(b.coords[0]);
  const double ta = a.coords[1], tb = b.coords[1];
  if (ea == eb) return Point({a.coords[0], ta + (tb > ta ? t : -t)});
  const Edge& A = edges_[ea];
  const Edge& B = edges_[eb];
  const double xa[2] = {ta, A.length - ta};
  const double yb[2] = {tb, B.length - tb};
  const std::size_t va[2] = {A.u, A.v};
  const std::size_t vb[2] = {B.u, B.v};
  int bi = 0, bj = 0;
  double best = INFINITY;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double len = xa[i] + vertex_distance(va[i], vb[j]) + yb[j];
      if (len < best) {
        best = len;
        bi = i;
        bj = j;
      }
    }
  }
  if (t <= xa[bi]) return Point({a.coords[0], bi == 0 ? ta - t : ta + t});
  t -= xa[bi];
  const double mid = vertex_distance(va[bi], vb[bj]);
  if (t <= mid) return walk_vertices(va[bi], vb[bj], t);
  t -= mid;
  return Point({b.coords[0], bj == 0 ? t : B.length - t});
}

Point TreeSpace::sample(Rng& rng) const {
  const double s = uniform(rng, 0.0, total_length_);
  std::size_t e = static_cast<std::size_t>(
      std::upper_bound(cumulative_length_.begin(), cumulative_length_.end(), s) -
      cumulative_length_.begin());
  if (e >= edges_.size()) e = edges_.size() - 1;
  return Point({static_cast<double>(e), uniform(rng, 0.0, edges_[e].length)});
}

Point TreeSpace::sample_ball(const Point& c, double r, Rng& rng) const {
  const Point q = sample(rng);
  const double d = distance(c, q);
  const bool sphere = uniform(rng, 0.0, 1.0) < 1.0 / 3.0;
  if (sphere) return point_along(c, q, std::min(d, r));
  if (d <= r) return q;
  return point_along(c, q, r * uniform(rng, 0.0, 1.0));
}

std::vector<Point> TreeSpace::anchors() const {
  std::vector<Point> out;
  for (std::size_t v = 0; v < vertex_count_; ++v) out.push_back(vertex_point(v));
  return out;
}

CoverDescriptor TreeSpace::cover(const PointSet& a) const {
  const CenterResult c = center(a);
  if (c.radius == 0.0) return spaces_detail::point_cover(*this, a.points.front());
  CoverDescriptor out;
  out.space_id = id_;
  out.kind = CoverDescriptor::Kind::BallFamily;
  auto add = [&](const Point& w) {
    out.balls.push_back({w, sup_distance(*this, w, std::span<const Point>(a.points))});
  };
  add(c.point);
  for (const auto& p : a.points) add(p);
  for (std::size_t v = 0; v < vertex_count_; ++v) add(vertex_point(v));
  return out;
}

CenterResult TreeSpace::center(const PointSet& a) const {
  const auto& pts = a.points;
  std::size_t bi = 0, bj = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i; j < pts.size(); ++j) {
      const double d = distance(pts[i], pts[j]);
      if (d > best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  }
  Point z = point_along(pts[bi], pts[bj], 0.5 * best);
  const double radius = sup_distance(*this, z, std::span<const Point>(pts));
  return {std::move(z), radius};
}

std::optional<RegularityResult> TreeSpace::regularity(const Point& x, const Point& y, double r,
                                                      double k, double mu) const {
  const double r1 = (1.0 + mu) * r;
  const double r2 = k * (1.0 + mu) * r;
  const double d = distance(x, y);
  RegularityResult out;
  double rho = 0.0;
  if (d > r1 + r2) return RegularityResult{x, 0.0};
  const double s = 0.5 * (r1 - r2 + d);
  if (s <= 0.0) {
    out.z = x;
    rho = r1;
  } else if (s >= d) {
    out.z = y;
    rho = r2;
  } else {
    out.z = point_along(x, y, s);
    rho = 0.5 * (r1 + r2 - d);
  }
  out.alpha = rho / r;
  if (!(out.alpha < 1.0)) return std::nullopt;
  return out;
}

std::string TreeSpace::describe() const {
  return "tree vertices=" + std::to_string(vertex_count_) +
         " edges=" + std::to_string(edges_.size());
}

}  // namespace ofl
