#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ofl/actions.hpp"
#include "ofl/metric_core.hpp"

namespace ofl {
namespace {

constexpr std::size_t kMaxWords = 500000;

void append_words(std::size_t m, std::size_t length, bool sorted, std::vector<Word>& out) {
  Word w(length, 0);
  if (length == 0) {
    out.push_back(w);
    return;
  }
  while (true) {
    out.push_back(w);
    std::size_t i = length;
    while (i > 0 && w[i - 1] + 1u >= m) --i;
    if (i == 0) return;
    ++w[i - 1];
    const std::uint16_t fill = sorted ? w[i - 1] : 0;
    for (std::size_t j = i; j < length; ++j) w[j] = fill;
  }
}

}  // namespace

std::string_view law_name(CompositionLaw law) {
  switch (law) {
    case CompositionLaw::Single: return "single";
    case CompositionLaw::Commuting: return "commuting";
    case CompositionLaw::Free: return "free";
  }
  return "unknown";
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(w[i]);
  }
  return s;
}

std::vector<Point> OrbitTable::points() const {
  std::vector<Point> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.point);
  return out;
}

PointSet OrbitTable::as_set(const std::string& space_id) const {
  return PointSet{space_id, points()};
}

Action::Action(MetricSpaceHandle space, std::vector<GeneratorMap> generators, CompositionLaw law,
               int default_horizon, std::uint64_t verify_seed)
    : space_(std::move(space)),
      generators_(std::move(generators)),
      law_(law),
      default_horizon_(default_horizon) {
  if (!space_) throw UsageError("action: null space");
  if (generators_.empty()) throw UsageError("action: at least one generator required");
  if (generators_.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw UsageError("action: too many generators");
  }
  if (law_ == CompositionLaw::Single && generators_.size() != 1) {
    throw UsageError("action: single law takes exactly one generator");
  }
  if (default_horizon_ < 1) throw UsageError("action: horizon must be at least 1");
  if (law_ == CompositionLaw::Commuting) {
    Rng rng(verify_seed);
    std::vector<Point> probes = space_->anchors();
    for (int i = 0; i < 64; ++i) probes.push_back(space_->sample(rng));
    for (std::size_t a = 0; a < generators_.size(); ++a) {
      for (std::size_t b = a + 1; b < generators_.size(); ++b) {
        for (const auto& x : probes) {
          const Point ab = generators_[a].apply(generators_[b].apply(x));
          const Point ba = generators_[b].apply(generators_[a].apply(x));
          if (space_->distance(ab, ba) > 1e-9) {
            throw UsageError("action: generators '" + generators_[a].name + "' and '" +
                             generators_[b].name + "' do not commute");
          }
        }
      }
    }
  }
}

std::string Action::name() const {
  std::string s;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) s += "+";
    s += generators_[i].name;
  }
  return s;
}

Word Action::canonical(Word w) const {
  for (auto g : w) {
    if (g >= generators_.size()) throw UsageError("malformed word: generator index out of range");
  }
  if (law_ == CompositionLaw::Commuting) std::sort(w.begin(), w.end());
  return w;
}

Word Action::compose(const Word& a, const Word& b) const {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return canonical(std::move(w));
}

Word Action::power(int n, std::uint16_t g) const {
  if (n < 0) throw UsageError("negative power");
  return Word(static_cast<std::size_t>(n), g);
}

Point Action::evaluate(const Word& w, const Point& x) const {
  Point p = x;
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i] >= generators_.size()) throw UsageError("malformed word: generator index out of range");
    p = generators_[w[i]].apply(p);
  }
  return p;
}

std::size_t Action::word_count_up_to(int max_length) const {
  const double m = static_cast<double>(generators_.size());
  double total = 0.0;
  if (law_ == CompositionLaw::Free) {
    double level = 1.0;
    for (int l = 0; l <= max_length; ++l) {
      total += level;
      level *= m;
    }
  } else {
    // multisets of size <= L from m letters: C(L + m, m)
    double c = 1.0;
    for (std::size_t i = 1; i <= generators_.size(); ++i) {
      c *= (static_cast<double>(max_length) + static_cast<double>(i)) / static_cast<double>(i);
    }
    total = c;
  }
  return total > 1e15 ? std::numeric_limits<std::size_t>::max()
                      : static_cast<std::size_t>(std::llround(total));
}

std::vector<Word> Action::words_up_to(int max_length) const {
  if (max_length < 0) throw UsageError("negative word length");
  if (word_count_up_to(max_length) > kMaxWords) {
    throw UsageError("word enumeration too large; reduce the horizon");
  }
  std::vector<Word> out;
  const bool sorted = law_ != CompositionLaw::Free;
  for (int l = 0; l <= max_length; ++l) {
    append_words(generators_.size(), static_cast<std::size_t>(l), sorted, out);
  }
  return out;
}

OrbitTable orbit(const Action& action, const Point& x, int horizon) {
  if (horizon < 1) throw std::domain_error("orbit: horizon must be at least 1");
  OrbitTable table;
  table.base = x;
  table.horizon = horizon;
  if (action.law() == CompositionLaw::Single) {
    table.entries.reserve(static_cast<std::size_t>(horizon) + 1);
    Point p = x;
    table.entries.push_back({Word{}, p});
    const auto& g = action.generator(0);
    for (int n = 1; n <= horizon; ++n) {
      p = g.apply(p);
      table.entries.push_back({Word(static_cast<std::size_t>(n), 0), p});
    }
    return table;
  }
  const auto words = action.words_up_to(horizon);
  std::map<Word, std::size_t> index;
  table.entries.reserve(words.size());
  for (const auto& w : words) {
    Point p;
    if (w.empty()) {
      p = x;
    } else {
      const Word rest(w.begin() + 1, w.end());
      p = action.generator(w[0]).apply(table.entries[index.at(rest)].point);
    }
    index.emplace(w, table.entries.size());
    table.entries.push_back({w, std::move(p)});
  }
  return table;
}

OrbitTable tail_orbit(const Action& action, const Point& x, int from, int horizon) {
  if (from < 0) throw std::domain_error("tail_orbit: negative start");
  if (from > horizon) throw std::domain_error("tail_orbit: start exceeds horizon");
  OrbitTable full = orbit(action, x, horizon);
  OrbitTable out;
  out.base = x;
  out.horizon = horizon;
  out.includes_base = from == 0;
  for (auto& e : full.entries) {
    if (static_cast<int>(e.word.size()) >= from) out.entries.push_back(std::move(e));
  }
  return out;
}

OrbitTable tail_orbit(const Action& action, const Point& x, const Word& s, int horizon) {
  const Word sc = action.canonical(s);
  if (static_cast<int>(sc.size()) > horizon) {
    throw std::domain_error("tail_orbit: word longer than horizon");
  }
  const PreorderPolicy order(action.law(), action.generator_count());
  OrbitTable full = orbit(action, x, horizon);
  OrbitTable out;
  out.base = x;
  out.horizon = horizon;
  out.includes_base = sc.empty();
  for (auto& e : full.entries) {
    if (order.leq(sc, e.word)) out.entries.push_back(std::move(e));
  }
  return out;
}

bool PreorderPolicy::leq(const Word& s, const Word& t) const {
  switch (law_) {
    case CompositionLaw::Single:
      return s.size() <= t.size();
    case CompositionLaw::Commuting: {
      std::vector<std::size_t> cs(generators_, 0), ct(generators_, 0);
      for (auto g : s) ++cs.at(g);
      for (auto g : t) ++ct.at(g);
      for (std::size_t i = 0; i < generators_; ++i) {
        if (cs[i] > ct[i]) return false;
      }
      return true;
    }
    case CompositionLaw::Free:
      return s.size() <= t.size() && std::equal(s.begin(), s.end(), t.end() - s.size());
  }
  return false;
}

bool PreorderPolicy::total_on(const std::vector<Word>& words) const {
  for (const auto& a : words) {
    for (const auto& b : words) {
      if (!leq(a, b) && !leq(b, a)) return false;
    }
  }
  return true;
}

bool PreorderPolicy::is_total() const {
  return law_ == CompositionLaw::Single || generators_ == 1;
}

InclusionReport check_inclusion_Ss_in_sS(const Action& action, std::size_t samples,
                                         std::uint64_t seed, int max_word_length,
                                         int extra_q_length, double tol) {
  InclusionReport report;
  if (action.law() != CompositionLaw::Free || action.generator_count() == 1) {
    report.note = "commuting law: q = p";
    return report;
  }
  Rng rng(seed);
  const MetricSpace& space = action.space();
  std::vector<Point> probes = space.anchors();
  for (int i = 0; i < 8; ++i) probes.push_back(space.sample(rng));
  std::vector<Word> pool = action.words_up_to(max_word_length);
  pool.erase(pool.begin());
  const int q_len = max_word_length + extra_q_length;
  report.q_search_length = q_len;
  std::vector<Word> candidates = action.words_up_to(q_len);
  candidates.erase(candidates.begin());
  for (std::size_t it = 0; it < samples; ++it) {
    const Word& p = pool[rng() % pool.size()];
    const Word& s = pool[rng() % pool.size()];
    std::vector<Point> target;
    for (const auto& x : probes) target.push_back(action.evaluate(action.compose(p, s), x));
    ++report.pairs_checked;
    bool found = false;
    double best_gap = INFINITY;
    std::size_t best_probe = 0;
    for (const auto& q : candidates) {
      if (static_cast<int>(q.size()) > static_cast<int>(p.size()) + extra_q_length) continue;
      double gap = 0.0;
      std::size_t worst = 0;
      for (std::size_t i = 0; i < probes.size(); ++i) {
        const double d = space.distance(target[i], action.evaluate(action.compose(s, q), probes[i]));
        if (d > gap) {
          gap = d;
          worst = i;
        }
      }
      if (gap <= tol) {
        found = true;
        break;
      }
      if (gap < best_gap) {
        best_gap = gap;
        best_probe = worst;
      }
    }
    if (!found) {
      report.pass = false;
      report.witness_p = p;
      report.witness_s = s;
      report.witness_point = probes[best_probe];
      report.witness_gap = best_gap;
      report.note = "no q found within the search length";
      return report;
    }
  }
  report.note = "q found for every sampled pair";
  return report;
}

}  // namespace ofl
