#pragma once

// Distance kernels over contiguous double vectors. Every kernel has a scalar
// reference implementation; AVX2 (x86-64) and NEON (aarch64) variants are
// selected once at startup. Set OFL_ISA=scalar to force the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace ofl::kernels {

enum class Metric { L1, L2, Linf };

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

struct Table {
  Isa isa;
  double (*l1)(const double* a, const double* b, std::size_t n);
  double (*l2_squared)(const double* a, const double* b, std::size_t n);
  double (*linf)(const double* a, const double* b, std::size_t n);
  // max_j |a_j - c| over a[0..n)
  double (*linf_to_constant)(const double* a, double c, std::size_t n);
  // max over rows of metric(x, row); rows are stored back to back, `dim` each.
  // For Metric::L2 the result is the distance, not its square.
  double (*max_distance_rows)(Metric metric, const double* x, const double* rows,
                              std::size_t count, std::size_t dim);
  // out[r] = metric(x, row r); L2 entries are distances.
  void (*distances_to_rows)(Metric metric, const double* x, const double* rows,
                            std::size_t count, std::size_t dim, double* out);
};

const Table& scalar_table();

// nullptr when the variant was not compiled in or the CPU lacks the extension.
const Table* simd_table();

// The table chosen at startup.
const Table& active();

double distance(Metric metric, std::span<const double> a, std::span<const double> b);

double max_distance_rows(Metric metric, std::span<const double> x, std::span<const double> rows,
                         std::size_t dim);

void distances_to_rows(Metric metric, std::span<const double> x, std::span<const double> rows,
                       std::size_t dim, std::span<double> out);

namespace detail {
const Table& scalar_impl();
const Table* avx2_impl();
const Table* neon_impl();
}  // namespace detail

}  // namespace ofl::kernels
