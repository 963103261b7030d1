#include <cmath>
#include <cstdlib>
#include <string>

#include "ofl/kernels.hpp"

namespace ofl::kernels {

namespace detail {
#ifndef OFL_HAVE_AVX2_KERNELS
const Table* avx2_impl() { return nullptr; }
#endif
#ifndef OFL_HAVE_NEON_KERNELS
const Table* neon_impl() { return nullptr; }
#endif
}  // namespace detail

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

const Table& scalar_table() { return detail::scalar_impl(); }

const Table* simd_table() {
#if defined(OFL_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  static const bool usable = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return usable ? detail::avx2_impl() : nullptr;
#elif defined(OFL_HAVE_NEON_KERNELS)
  return detail::neon_impl();
#else
  return nullptr;
#endif
}

namespace {

const Table& select() {
  if (const char* forced = std::getenv("OFL_ISA")) {
    if (std::string(forced) == "scalar") return scalar_table();
  }
  if (const Table* simd = simd_table()) return *simd;
  return scalar_table();
}

}  // namespace

const Table& active() {
  static const Table& chosen = select();
  return chosen;
}

double distance(Metric metric, std::span<const double> a, std::span<const double> b) {
  const Table& t = active();
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
  switch (metric) {
    case Metric::L1: return t.l1(a.data(), b.data(), n);
    case Metric::L2: {
      const double s = t.l2_squared(a.data(), b.data(), n);
      return std::sqrt(s);
    }
    case Metric::Linf: return t.linf(a.data(), b.data(), n);
  }
  return 0.0;
}

double max_distance_rows(Metric metric, std::span<const double> x, std::span<const double> rows,
                         std::size_t dim) {
  if (dim == 0 || rows.empty()) return 0.0;
  return active().max_distance_rows(metric, x.data(), rows.data(), rows.size() / dim, dim);
}

void distances_to_rows(Metric metric, std::span<const double> x, std::span<const double> rows,
                       std::size_t dim, std::span<double> out) {
  if (dim == 0) return;
  active().distances_to_rows(metric, x.data(), rows.data(), rows.size() / dim, dim, out.data());
}

}  // namespace ofl::kernels
