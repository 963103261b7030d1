#include "ofl/kernels.hpp"

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

namespace ofl::kernels {
namespace {

double l1_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vaddq_f64(acc, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  double sum = vaddvq_f64(acc);
  for (; i < n; ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double l2_squared_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    acc = vfmaq_f64(acc, d, d);
  }
  double sum = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double linf_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vmaxq_f64(acc, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  double m = vmaxvq_f64(acc);
  for (; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double linf_to_constant_neon(const double* a, double c, std::size_t n) {
  const float64x2_t cv = vdupq_n_f64(c);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vabdq_f64(vld1q_f64(a + i), cv));
  double m = vmaxvq_f64(acc);
  for (; i < n; ++i) m = std::max(m, std::abs(a[i] - c));
  return m;
}

double max_distance_rows_neon(Metric metric, const double* x, const double* rows,
                              std::size_t count, std::size_t dim) {
  double best = 0.0;
  for (std::size_t r = 0; r < count; ++r) {
    const double* row = rows + r * dim;
    double d = 0.0;
    switch (metric) {
      case Metric::L1: d = l1_neon(x, row, dim); break;
      case Metric::L2: d = l2_squared_neon(x, row, dim); break;
      case Metric::Linf: d = linf_neon(x, row, dim); break;
    }
    best = std::max(best, d);
  }
  return metric == Metric::L2 ? std::sqrt(best) : best;
}

void distances_to_rows_neon(Metric metric, const double* x, const double* rows,
                            std::size_t count, std::size_t dim, double* out) {
  for (std::size_t r = 0; r < count; ++r) {
    const double* row = rows + r * dim;
    switch (metric) {
      case Metric::L1: out[r] = l1_neon(x, row, dim); break;
      case Metric::L2: out[r] = std::sqrt(l2_squared_neon(x, row, dim)); break;
      case Metric::Linf: out[r] = linf_neon(x, row, dim); break;
    }
  }
}

const Table kNeon{Isa::Neon,          l1_neon,
                  l2_squared_neon,    linf_neon,
                  linf_to_constant_neon, max_distance_rows_neon,
                  distances_to_rows_neon};

}  // namespace

namespace detail {
const Table* neon_impl() { return &kNeon; }
}  // namespace detail

}  // namespace ofl::kernels
