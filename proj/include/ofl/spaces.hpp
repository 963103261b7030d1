#pragma once

#include <array>
#include <string>
#include <vector>

#include "ofl/metric_space.hpp"

namespace ofl {

// [a, b] with |x - y|.
class IntervalSpace final : public MetricSpace {
 public:
  IntervalSpace(double a, double b);

  double lower() const { return a_; }
  double upper() const { return b_; }

  const std::string& id() const override { return id_; }
  SpaceKind kind() const override { return SpaceKind::Interval; }
  double distance(const Point& x, const Point& y) const override;
  bool contains(const Point& p, double tol) const override;
  Point sample(Rng& rng) const override;
  Point sample_ball(const Point& c, double r, Rng& rng) const override;
  std::vector<Point> anchors() const override;
  double diameter_bound() const override { return b_ - a_; }
  ReferenceConstants reference_constants() const override { return {2.0, 0.5}; }
  std::optional<kernels::Metric> flat_metric() const override { return kernels::Metric::Linf; }
  bool has_cover_oracle() const override { return true; }
  CoverDescriptor cover(const PointSet& a) const override;
  bool has_center_oracle() const override { return true; }
  CenterResult center(const PointSet& a) const override;
  bool has_regularity_oracle() const override { return true; }
  std::optional<RegularityResult> regularity(const Point& x, const Point& y, double r, double k,
                                             double mu) const override;
  std::string describe() const override;

 private:
  double a_, b_;
  std::string id_;
};

// Box ∏[lo_i, hi_i] in (R^n, max-norm).
class MaxNormSpace final : public MetricSpace {
 public:
  MaxNormSpace(std::vector<double> lo, std::vector<double> hi);
  static MaxNormSpace cube(std::size_t n, double lo, double hi);

  const std::vector<double>& lower() const { return lo_; }
  const std::vector<double>& upper() const { return hi_; }

  const std::string& id() const override { return id_; }
  SpaceKind kind() const override { return SpaceKind::MaxNorm; }
  std::size_t dimension() const override { return lo_.size(); }
  double distance(const Point& x, const Point& y) const override;
  bool contains(const Point& p, double tol) const override;
  Point sample(Rng& rng) const override;
  Point sample_ball(const Point& c, double r, Rng& rng) const override;
  std::vector<Point> anchors() const override;
  double diameter_bound() const override;
  ReferenceConstants reference_constants() const override;
  std::optional<kernels::Metric> flat_metric() const override { return kernels::Metric::Linf; }
  bool has_cover_oracle() const override { return true; }
  CoverDescriptor cover(const PointSet& a) const override;
  bool has_center_oracle() const override { return true; }
  CenterResult center(const PointSet& a) const override;
  bool has_regularity_oracle() const override { return true; }
  std::optional<RegularityResult> regularity(const Point& x, const Point& y, double r, double k,
                                             double mu) const override;
  std::string describe() const override;

 private:
  std::vector<double> lo_, hi_;
  std::string id_;
};

// Closed ball B(center, radius) in Euclidean R^n.
class EuclideanSpace final : public MetricSpace {
 public:
  EuclideanSpace(std::size_t n, double radius, std::vector<double> center = {});

  double domain_radius() const { return radius_; }
  const std::vector<double>& domain_center() const { return center_; }

  const std::string& id() const override { return id_; }
  SpaceKind kind() const override { return SpaceKind::Euclidean; }
  std::size_t dimension() const override { return n_; }
  double distance(const Point& x, const Point& y) const override;
  bool contains(const Point& p, double tol) const override;
  Point sample(Rng& rng) const override;
  Point sample_ball(const Point& c, double r, Rng& rng) const override;
  std::vector<Point> anchors() const override;
  double diameter_bound() const override { return 2.0 * radius_; }
  ReferenceConstants reference_constants() const override;
  std::optional<kernels::Metric> flat_metric() const override { return kernels::Metric::L2; }
  bool has_cover_oracle() const override { return true; }
  CoverDescriptor cover(const PointSet& a) const override;
  bool has_center_oracle() const override { return true; }
  CenterResult center(const PointSet& a) const override;
  bool has_regularity_oracle() const override { return true; }
  std::optional<RegularityResult> regularity(const Point& x, const Point& y, double r, double k,
                                             double mu) const override;
  std::string describe() const override;

 private:
  std::size_t n_;
  double radius_;
  std::vector<double> center_;
  std::string id_;
};

// Ball of radius R about the origin in (R^N, ||.||_p), 1 <= p < inf.
class LpSpace final : public MetricSpace {
 public:
  LpSpace(std::size_t n, double p, double radius = 1.0);

  double exponent() const { return p_; }
  double norm(const std::vector<double>& v) const;

  const std::string& id() const override { return id_; }
  SpaceKind kind() const override { return SpaceKind::Lp; }
  std::size_t dimension() const override { return n_; }
  double distance(const Point& x, const Point& y) const override;
  bool contains(const Point& p, double tol) const override;
  Point sample(Rng& rng) const override;
  Point sample_ball(const Point& c, double r, Rng& rng) const override;
  std::vector<Point> anchors() const override;
  double diameter_bound() const override { return 2.0 * radius_; }
  ReferenceConstants reference_constants() const override;
  std::optional<kernels::Metric> flat_metric() const override;
  bool has_cover_oracle() const override { return true; }
  CoverDescriptor cover(const PointSet& a) const override;
  bool has_center_oracle() const override { return true; }
  CenterResult center(const PointSet& a) const override;
  bool has_regularity_oracle() const override { return p_ == 2.0; }
  std::optional<RegularityResult> regularity(const Point& x, const Point& y, double r, double k,
                                             double mu) const override;
  std::string describe() const override;

 private:
  std::vector<double> unit_ball_sample(Rng& rng, bool on_sphere) const;

  std::size_t n_;
  double p_;
  double radius_;
  std::string id_;
};

// Finite metric tree. A point is (edge, offset), offset measured from the edge's `u` end.
class TreeSpace final : public MetricSpace {
 public:
  struct Edge {
    std::size_t u, v;
    double length;
  };

  TreeSpace(std::size_t vertices, std::vector<Edge> edges);
  // A small fixed tree used by the catalog.
  static TreeSpace default_tree();

  std::size_t vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  Point vertex_point(std::size_t v) const;
  // Point at distance t from a on the geodesic [a, b] (t clamped to [0, d(a,b)]).
  Point point_along(const Point& a, const Point& b, double t) const;

  const std::string& id() const override { return id_; }
  SpaceKind kind() const override { return SpaceKind::Tree; }
  double distance(const Point& x, const Point& y) const override;
  bool contains(const Point& p, double tol) const override;
  Point sample(Rng& rng) const override;
  Point sample_ball(const Point& c, double r, Rng& rng) const override;
  std::vector<Point> anchors() const override;
  double diameter_bound() const override { return diameter_; }
  ReferenceConstants reference_constants() const override { return {2.0, 0.5}; }
  bool has_cover_oracle() const override { return true; }
  CoverDescriptor cover(const PointSet& a) const override;
  bool has_center_oracle() const override { return true; }
  CenterResult center(const PointSet& a) const override;
  bool has_regularity_oracle() const override { return true; }
  std::optional<RegularityResult> regularity(const Point& x, const Point& y, double r, double k,
                                             double mu) const override;
  std::string describe() const override;

 private:
  double vertex_distance(std::size_t a, std::size_t b) const {
    return vdist_[a * vertex_count_ + b];
  }
  // (edge, offset) of the point at distance t from vertex a toward vertex b.
  Point walk_vertices(std::size_t a, std::size_t b, double t) const;

  std::size_t vertex_count_;
  std::vector<Edge> edges_;
  std::vector<double> vdist_;
  std::vector<std::size_t> next_hop_;
  std::vector<double> cumulative_length_;
  double total_length_ = 0.0;
  double diameter_ = 0.0;
  std::string id_;
};

// Eventually constant real sequences with the sup metric. Sampling draws prefixes
// of length <= max_prefix with entries and tails in [-bound, bound].
class EventuallyConstSeqSpace final : public MetricSpace {
 public:
  explicit EventuallyConstSeqSpace(std::size_t max_prefix = 8, double bound = 1.0);

  static Point constant(double c) { return Point({}, c); }
  // Drops trailing prefix entries equal to the tail.
  static Point normalize(Point p);

  const std::string& id() const override { return id_; }
  SpaceKind kind() const override { return SpaceKind::EventuallyConstant; }
  double distance(const Point& x, const Point& y) const override;
  bool contains(const Point& p, double tol) const override;
  Point sample(Rng& rng) const override;
  Point sample_ball(const Point& c, double r, Rng& rng) const override;
  std::vector<Point> anchors() const override;
  double diameter_bound() const override;
  ReferenceConstants reference_constants() const override { return {1.0, 0.5}; }
  bool has_cover_oracle() const override { return true; }
  CoverDescriptor cover(const PointSet& a) const override;
  bool has_center_oracle() const override { return true; }
  CenterResult center(const PointSet& a) const override;
  std::string describe() const override;

 private:
  std::size_t max_prefix_;
  double bound_;
  std::string id_;
};

// Two-ball intersection in a 1-D interval domain: smallest enclosing sub-interval.
// Shared by the interval and the one-dimensional max-norm space.
std::optional<RegularityResult> interval_lens(double x, double y, double r1, double r2, double lo,
                                              double hi, double r);

}  // namespace ofl
