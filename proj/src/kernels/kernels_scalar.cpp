#include "ofl/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace ofl::kernels {
namespace {

double l1_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double l2_squared_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double linf_scalar(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double linf_to_constant_scalar(const double* a, double c, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - c));
  return m;
}

double max_distance_rows_scalar(Metric metric, const double* x, const double* rows,
                                std::size_t count, std::size_t dim) {
  double best = 0.0;
  for (std::size_t r = 0; r < count; ++r) {
    const double* row = rows + r * dim;
    double d = 0.0;
    switch (metric) {
      case Metric::L1: d = l1_scalar(x, row, dim); break;
      case Metric::L2: d = l2_squared_scalar(x, row, dim); break;
      case Metric::Linf: d = linf_scalar(x, row, dim); break;
    }
    best = std::max(best, d);
  }
  return metric == Metric::L2 ? std::sqrt(best) : best;
}

void distances_to_rows_scalar(Metric metric, const double* x, const double* rows,
                              std::size_t count, std::size_t dim, double* out) {
  for (std::size_t r = 0; r < count; ++r) {
    const double* row = rows + r * dim;
    switch (metric) {
      case Metric::L1: out[r] = l1_scalar(x, row, dim); break;
      case Metric::L2: out[r] = std::sqrt(l2_squared_scalar(x, row, dim)); break;
      case Metric::Linf: out[r] = linf_scalar(x, row, dim); break;
    }
  }
}

const Table kScalar{Isa::Scalar,         l1_scalar,
                    l2_squared_scalar,   linf_scalar,
                    linf_to_constant_scalar, max_distance_rows_scalar,
                    distances_to_rows_scalar};

}  // namespace

namespace detail {
const Table& scalar_impl() { return kScalar; }
}  // namespace detail

}  // namespace ofl::kernels
