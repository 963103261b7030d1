#include "ofl/min_enclosing_ball.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <list>
#include <stdexcept>

namespace ofl {
namespace {

class Welzl {
 public:
  Welzl(const std::vector<std::vector<double>>& pts) : dim_(pts.front().size()) {
    points_.reserve(pts.size());
    for (const auto& p : pts) points_.push_back(Eigen::Map<const Eigen::VectorXd>(p.data(), dim_));
    for (std::size_t i = 0; i < points_.size(); ++i) order_.push_back(i);
    center_ = points_.front();
    r2_ = -1.0;
  }

  void run() { mtf(order_.end()); }

  const Eigen::VectorXd& center() const { return center_; }

 private:
  void fit_support() {
    if (support_.empty()) {
      center_ = points_.front();
      r2_ = -1.0;
      return;
    }
    const Eigen::VectorXd& p0 = points_[support_.front()];
    const Eigen::Index k = static_cast<Eigen::Index>(support_.size()) - 1;
    if (k == 0) {
      center_ = p0;
      r2_ = 0.0;
      return;
    }
    Eigen::MatrixXd diffs(static_cast<Eigen::Index>(dim_), k);
    for (Eigen::Index j = 0; j < k; ++j) diffs.col(j) = points_[support_[j + 1]] - p0;
    const Eigen::MatrixXd gram = 2.0 * diffs.transpose() * diffs;
    const Eigen::VectorXd rhs = diffs.colwise().squaredNorm().transpose();
    const Eigen::VectorXd lambda = gram.completeOrthogonalDecomposition().solve(rhs);
    center_ = p0 + diffs * lambda;
    r2_ = (center_ - p0).squaredNorm();
  }

  bool outside(std::size_t i) const {
    if (r2_ < 0.0) return true;
    const double d2 = (points_[i] - center_).squaredNorm();
    return d2 > r2_ * (1.0 + 1e-12) + 1e-300;
  }

  void mtf(std::list<std::size_t>::iterator end) {
    fit_support();
    if (support_.size() == dim_ + 1) return;
    for (auto it = order_.begin(); it != end;) {
      auto cur = it++;
      if (outside(*cur)) {
        support_.push_back(*cur);
        mtf(cur);
        support_.pop_back();
        order_.splice(order_.begin(), order_, cur);
      }
    }
  }

  std::size_t dim_;
  std::vector<Eigen::VectorXd> points_;
  std::list<std::size_t> order_;
  std::vector<std::size_t> support_;
  Eigen::VectorXd center_;
  double r2_;
};

}  // namespace

EuclideanBall min_enclosing_ball(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw std::domain_error("min_enclosing_ball: empty point set");
  Welzl w(points);
  w.run();
  EuclideanBall out;
  out.center.assign(w.center().data(), w.center().data() + w.center().size());
  double r2 = 0.0;
  for (const auto& p : points) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - out.center[i]) * (p[i] - out.center[i]);
    r2 = std::max(r2, s);
  }
  out.radius = std::sqrt(r2);
  return out;
}

}  // namespace ofl
