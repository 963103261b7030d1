#include "ofl/point.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace ofl {

bool lex_less(const Point& a, const Point& b) {
  if (a.coords != b.coords) {
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(),
                                        b.coords.end());
  }
  return a.tail < b.tail;
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform(Rng& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace ofl
