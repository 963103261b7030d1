#include <doctest.h>

#include <cmath>
#include <vector>

#include "ofl/kernels.hpp"
#include "support.hpp"

using namespace ofl;
namespace k = ofl::kernels;

namespace {

double ref_l1(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return static_cast<double>(s);
}

double ref_l2sq(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (long double)(a[i] - b[i]) * (a[i] - b[i]);
  return static_cast<double>(s);
}

double ref_linf(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

void check_table(const k::Table& t) {
  Rng rng(11);
  for (std::size_t n = 0; n <= 67; ++n) {
    for (int rep = 0; rep < 8; ++rep) {
      const auto a = test::random_vector(rng, n, -5, 5), b = test::random_vector(rng, n, -5, 5);
      CHECK(t.l1(a.data(), b.data(), n) == doctest::Approx(ref_l1(a, b)).epsilon(1e-13));
      CHECK(t.l2_squared(a.data(), b.data(), n) == doctest::Approx(ref_l2sq(a, b)).epsilon(1e-13));
      CHECK(t.linf(a.data(), b.data(), n) == ref_linf(a, b));
      const std::vector<double> c(n, 0.25);
      CHECK(t.linf_to_constant(a.data(), 0.25, n) == ref_linf(a, c));
    }
  }
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar kernels match long-double references") { check_table(k::scalar_table()); }

  TEST_CASE("simd kernels match the scalar reference") {
    const k::Table* simd = k::simd_table();
    if (!simd) {
      MESSAGE("no SIMD variant on this machine");
      return;
    }
    check_table(*simd);
    const k::Table& s = k::scalar_table();
    Rng rng(12);
    for (auto metric : {k::Metric::L1, k::Metric::L2, k::Metric::Linf}) {
      for (std::size_t dim : {1u, 2u, 3u, 4u, 5u, 8u, 13u}) {
        for (std::size_t count : {0u, 1u, 3u, 4u, 17u}) {
          const auto x = test::random_vector(rng, dim);
          const auto rows = test::random_vector(rng, dim * count);
          const double ms = s.max_distance_rows(metric, x.data(), rows.data(), count, dim);
          const double mv = simd->max_distance_rows(metric, x.data(), rows.data(), count, dim);
          CHECK(mv == doctest::Approx(ms).epsilon(1e-13));
          std::vector<double> os(count), ov(count);
          s.distances_to_rows(metric, x.data(), rows.data(), count, dim, os.data());
          simd->distances_to_rows(metric, x.data(), rows.data(), count, dim, ov.data());
          for (std::size_t r = 0; r < count; ++r) CHECK(ov[r] == doctest::Approx(os[r]).epsilon(1e-13));
        }
      }
    }
  }

  TEST_CASE("dispatching wrappers agree with direct evaluation") {
    Rng rng(13);
    const auto a = test::random_vector(rng, 9), b = test::random_vector(rng, 9);
    CHECK(k::distance(k::Metric::L2, a, b) == doctest::Approx(std::sqrt(ref_l2sq(a, b))));
    CHECK(k::distance(k::Metric::Linf, a, b) == ref_linf(a, b));
    CHECK(k::isa_name(k::active().isa).size() > 0);
  }

  TEST_CASE("three-four-five") {
    const std::vector<double> a{0, 0}, b{3, 4};
    CHECK(k::distance(k::Metric::L2, a, b) == 5.0);
    CHECK(k::distance(k::Metric::L1, a, b) == 7.0);
    CHECK(k::distance(k::Metric::Linf, a, b) == 4.0);
  }
}
