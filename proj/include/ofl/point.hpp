#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ofl {

// Interval, box, Euclidean and lp points use `coords` as the vector.
// Tree points: coords = {edge id, offset from the edge's first vertex}.
// Eventually constant sequences: coords = prefix, `tail` = the constant.
struct Point {
  std::vector<double> coords;
  double tail = 0.0;
  bool rational = false;  // exact-rational representation class, read by S_a

  Point() = default;
  explicit Point(std::vector<double> c, double t = 0.0, bool q = false)
      : coords(std::move(c)), tail(t), rational(q) {}

  static Point scalar(double v, bool q = false) { return Point({v}, 0.0, q); }

  bool operator==(const Point&) const = default;
};

// Lexicographic order on (coords, tail).
bool lex_less(const Point& a, const Point& b);

struct PointSet {
  std::string space_id;
  std::vector<Point> points;
};

struct BallSpec {
  Point center;
  double radius = 0.0;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using Rng = std::mt19937_64;

// splitmix64 finalizer; derives independent stream seeds from a master seed.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream);

double uniform(Rng& rng, double lo, double hi);

// Shortest round-trip decimal form.
std::string format_number(double v);

}  // namespace ofl
