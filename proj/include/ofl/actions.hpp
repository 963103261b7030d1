#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ofl/metric_space.hpp"

namespace ofl {

// Generator indices. The word {a, b} acts as a(b(x)): the rightmost letter acts first.
using Word = std::vector<std::uint16_t>;

enum class CompositionLaw {
  Single,     // (N, +): powers of one map
  Commuting,  // (N^m, +): commuting generators, words kept sorted
  Free        // no relations assumed
};

std::string_view law_name(CompositionLaw law);
std::string word_to_string(const Word& w);

struct GeneratorMap {
  std::string name;
  std::function<Point(const Point&)> apply;
  // Pointwise limit of the Chebyshev centers of the orbit tails {T^m x : m >= s}
  // as s grows, when the map knows it in closed form.
  std::function<Point(const Point&)> asymptotic_center;
};

struct OrbitEntry {
  Word word;
  Point point;
};

struct OrbitTable {
  Point base;
  int horizon = 0;
  bool includes_base = true;  // S^1 convention: the identity word is entry 0 when present
  std::vector<OrbitEntry> entries;

  std::vector<Point> points() const;
  PointSet as_set(const std::string& space_id) const;
};

class Action {
 public:
  // Commuting laws are verified on sampled points (tolerance 1e-9); UsageError otherwise.
  Action(MetricSpaceHandle space, std::vector<GeneratorMap> generators, CompositionLaw law,
         int default_horizon = 64, std::uint64_t verify_seed = 1);

  const MetricSpace& space() const { return *space_; }
  const MetricSpaceHandle& space_handle() const { return space_; }
  CompositionLaw law() const { return law_; }
  int default_horizon() const { return default_horizon_; }
  std::size_t generator_count() const { return generators_.size(); }
  const GeneratorMap& generator(std::size_t i) const { return generators_.at(i); }
  std::string name() const;

  Word canonical(Word w) const;
  // a·b, acting as a(b(x)).
  Word compose(const Word& a, const Word& b) const;
  Word power(int n, std::uint16_t g = 0) const;
  Point evaluate(const Word& w, const Point& x) const;
  // Canonical words of length <= max_length in graded lexicographic order, identity first.
  std::vector<Word> words_up_to(int max_length) const;
  std::size_t word_count_up_to(int max_length) const;

 private:
  MetricSpaceHandle space_;
  std::vector<GeneratorMap> generators_;
  CompositionLaw law_;
  int default_horizon_;
};

// o(x) truncated at word length `horizon`, identity included.
OrbitTable orbit(const Action& action, const Point& x, int horizon);
// Entries of o(x) whose word length is at least `from`.
OrbitTable tail_orbit(const Action& action, const Point& x, int from, int horizon);
// o(sx) = {u·s x : |u·s| <= horizon}.
OrbitTable tail_orbit(const Action& action, const Point& x, const Word& s, int horizon);

// s <= t iff t ∈ S^1 s.
class PreorderPolicy {
 public:
  explicit PreorderPolicy(CompositionLaw law, std::size_t generators = 1)
      : law_(law), generators_(generators) {}
  bool leq(const Word& s, const Word& t) const;
  bool total_on(const std::vector<Word>& words) const;
  // Totality over all of S, not just a sample.
  bool is_total() const;

 private:
  CompositionLaw law_;
  std::size_t generators_;
};

struct InclusionReport {
  bool pass = true;
  std::size_t pairs_checked = 0;
  int q_search_length = 0;
  std::string note;
  // First (p, s) for which no q with |q| <= q_search_length satisfied p·s = s·q.
  std::optional<Word> witness_p, witness_s;
  std::optional<Point> witness_point;
  double witness_gap = 0.0;
};

// Tests Ss ⊆ sS: for sampled p, s with |p|,|s| <= max_word_length, searches q with
// |q| <= |p| + extra_q_length and p·s x = s·q x on sampled x.
InclusionReport check_inclusion_Ss_in_sS(const Action& action, std::size_t samples,
                                         std::uint64_t seed, int max_word_length = 2,
                                         int extra_q_length = 1, double tol = 1e-9);

}  // namespace ofl
