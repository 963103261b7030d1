#include "ofl/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace ofl::kernels {
namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, v);
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, sh));
}

double l1_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, abs_pd(d));
  }
  double sum = hsum(acc);
  for (; i < n; ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double l2_squared_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double sum = hsum(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double linf_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_max_pd(acc, abs_pd(d));
  }
  double m = hmax(acc);
  for (; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double linf_to_constant_avx2(const double* a, double c, std::size_t n) {
  const __m256d cv = _mm256_set1_pd(c);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_max_pd(acc, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i), cv)));
  }
  double m = hmax(acc);
  for (; i < n; ++i) m = std::max(m, std::abs(a[i] - c));
  return m;
}

// One coordinate per row: four rows per register.
double max_rows_dim1(Metric metric, double x, const double* rows, std::size_t count) {
  const __m256d xv = _mm256_set1_pd(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t r = 0;
  for (; r + 4 <= count; r += 4) {
    acc = _mm256_max_pd(acc, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(rows + r), xv)));
  }
  double m = hmax(acc);
  for (; r < count; ++r) m = std::max(m, std::abs(rows[r] - x));
  (void)metric;
  return m;
}

// Two coordinates per row: two rows per register.
double max_rows_dim2(Metric metric, const double* x, const double* rows, std::size_t count) {
  const __m256d xv = _mm256_setr_pd(x[0], x[1], x[0], x[1]);
  __m256d acc = _mm256_setzero_pd();
  std::size_t r = 0;
  for (; r + 2 <= count; r += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(rows + 2 * r), xv);
    __m256d per_row;
    switch (metric) {
      case Metric::L1: {
        const __m256d ad = abs_pd(d);
        per_row = _mm256_hadd_pd(ad, ad);
        break;
      }
      case Metric::L2: {
        const __m256d sq = _mm256_mul_pd(d, d);
        per_row = _mm256_hadd_pd(sq, sq);
        break;
      }
      case Metric::Linf:
      default: {
        const __m256d ad = abs_pd(d);
        per_row = _mm256_max_pd(ad, _mm256_permute_pd(ad, 0b0101));
        break;
      }
    }
    acc = _mm256_max_pd(acc, per_row);
  }
  double m = hmax(acc);
  for (; r < count; ++r) {
    const double* row = rows + 2 * r;
    const double d0 = row[0] - x[0];
    const double d1 = row[1] - x[1];
    double d = 0.0;
    switch (metric) {
      case Metric::L1: d = std::abs(d0) + std::abs(d1); break;
      case Metric::L2: d = d0 * d0 + d1 * d1; break;
      case Metric::Linf: d = std::max(std::abs(d0), std::abs(d1)); break;
    }
    m = std::max(m, d);
  }
  return metric == Metric::L2 ? std::sqrt(m) : m;
}

double max_distance_rows_avx2(Metric metric, const double* x, const double* rows,
                              std::size_t count, std::size_t dim) {
  if (dim == 1) return max_rows_dim1(metric, x[0], rows, count);
  if (dim == 2) return max_rows_dim2(metric, x, rows, count);
  double best = 0.0;
  for (std::size_t r = 0; r < count; ++r) {
    const double* row = rows + r * dim;
    double d = 0.0;
    switch (metric) {
      case Metric::L1: d = l1_avx2(x, row, dim); break;
      case Metric::L2: d = l2_squared_avx2(x, row, dim); break;
      case Metric::Linf: d = linf_avx2(x, row, dim); break;
    }
    best = std::max(best, d);
  }
  return metric == Metric::L2 ? std::sqrt(best) : best;
}

void distances_to_rows_avx2(Metric metric, const double* x, const double* rows,
                            std::size_t count, std::size_t dim, double* out) {
  std::size_t r = 0;
  if (dim == 1) {
    const __m256d xv = _mm256_set1_pd(x[0]);
    for (; r + 4 <= count; r += 4) {
      _mm256_storeu_pd(out + r, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(rows + r), xv)));
    }
    for (; r < count; ++r) out[r] = std::abs(rows[r] - x[0]);
    return;
  }
  if (dim == 2) {
    const __m256d xv = _mm256_setr_pd(x[0], x[1], x[0], x[1]);
    for (; r + 2 <= count; r += 2) {
      const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(rows + 2 * r), xv);
      __m256d per_row;
      switch (metric) {
        case Metric::L1: {
          const __m256d ad = abs_pd(d);
          per_row = _mm256_hadd_pd(ad, ad);
          break;
        }
        case Metric::L2: {
          const __m256d sq = _mm256_mul_pd(d, d);
          per_row = _mm256_sqrt_pd(_mm256_hadd_pd(sq, sq));
          break;
        }
        case Metric::Linf:
        default: {
          const __m256d ad = abs_pd(d);
          per_row = _mm256_max_pd(ad, _mm256_permute_pd(ad, 0b0101));
          break;
        }
      }
      const __m256d packed = _mm256_permute4x64_pd(per_row, 0b1000);
      _mm_storeu_pd(out + r, _mm256_castpd256_pd128(packed));
    }
  }
  for (; r < count; ++r) {
    const double* row = rows + r * dim;
    switch (metric) {
      case Metric::L1: out[r] = l1_avx2(x, row, dim); break;
      case Metric::L2: out[r] = std::sqrt(l2_squared_avx2(x, row, dim)); break;
      case Metric::Linf: out[r] = linf_avx2(x, row, dim); break;
    }
  }
}

const Table kAvx2{Isa::Avx2,          l1_avx2,
                  l2_squared_avx2,    linf_avx2,
                  linf_to_constant_avx2, max_distance_rows_avx2,
                  distances_to_rows_avx2};

}  // namespace

namespace detail {
const Table* avx2_impl() { return &kAvx2; }
}  // namespace detail

}  // namespace ofl::kernels
