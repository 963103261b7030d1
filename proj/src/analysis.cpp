#include "ofl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>
#include <thread>

#include "ofl/metric_core.hpp"

namespace ofl {
namespace {

struct Needs {
  bool ratios = true;  // uniform and orbit
  bool strong = true;
  bool star = false;
};

// Index structure shared by every pair: which entries of the y-orbit table feed
// each numerator and denominator. o(u y) is truncated to {v u y : |v| <= H}.
struct Layout {
  bool single = false;
  int horizon = 0;
  int window = 0;
  std::vector<Word> s_words;
  std::vector<Word> u_words;  // u_words[0] is the identity
  int y_length = 0;           // y-table covers words of length <= y_length
  int x_length = 0;

  // generic laws only
  std::vector<Word> y_words;
  std::vector<std::size_t> idx_u;
  std::vector<std::vector<std::size_t>> orbit_of_u;
  std::vector<std::vector<std::size_t>> su, us;
  std::vector<std::vector<std::vector<std::size_t>>> vts;
  std::vector<std::size_t> strong_orbit;  // entries with |w| <= H + M
  std::vector<Word> x_words;
  std::vector<std::size_t> x_idx_s;
  std::vector<std::size_t> x_orbit;  // entries of the x table with |w| <= H

  std::size_t y_size() const {
    return single ? static_cast<std::size_t>(y_length) + 1 : y_words.size();
  }
};

Layout make_layout(const Action& action, const SamplePlan& plan, const Needs& needs) {
  if (plan.horizon < 1) throw UsageError("sample plan: horizon must be at least 1");
  if (plan.words < 1) throw UsageError("sample plan: need at least one word");
  Layout L;
  L.single = action.law() == CompositionLaw::Single;
  L.horizon = plan.horizon;
  L.window = plan.effective_window();
  if (L.window > L.horizon) throw UsageError("sample plan: window exceeds horizon");
  const int H = L.horizon, M = L.window;

  if (L.single) {
    for (std::size_t s = 1; s <= plan.words; ++s) L.s_words.push_back(action.power(static_cast<int>(s)));
    for (int u = 0; u <= M; ++u) L.u_words.push_back(action.power(u));
    const int max_s = static_cast<int>(plan.words);
    L.y_length = M + std::max(H, max_s);
    if (needs.star) L.y_length = max_s + M + H;
    L.x_length = std::max(H, max_s);
    return L;
  }

  int s_len = 1;
  while (action.word_count_up_to(s_len) - 1 < plan.words && s_len < 64) ++s_len;
  {
    auto all = action.words_up_to(s_len);
    for (std::size_t i = 1; i < all.size() && L.s_words.size() < plan.words; ++i) {
      L.s_words.push_back(all[i]);
    }
  }
  int max_s = 0;
  for (const auto& s : L.s_words) max_s = std::max(max_s, static_cast<int>(s.size()));
  L.u_words = action.words_up_to(M);
  L.y_length = M + std::max(H, max_s);
  if (needs.star) L.y_length = max_s + M + H;
  L.x_length = std::max(H, max_s);
  L.y_words = action.words_up_to(L.y_length);
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < L.y_words.size(); ++i) index.emplace(L.y_words[i], i);
  auto at = [&](const Word& w) { return index.at(action.canonical(w)); };

  for (std::size_t i = 0; i < L.y_words.size(); ++i) {
    if (static_cast<int>(L.y_words[i].size()) <= H + M) L.strong_orbit.push_back(i);
  }
  const auto h_words = action.words_up_to(H);
  L.idx_u.resize(L.u_words.size());
  L.orbit_of_u.resize(L.u_words.size());
  for (std::size_t ui = 0; ui < L.u_words.size(); ++ui) {
    const Word& u = L.u_words[ui];
    L.idx_u[ui] = at(u);
    std::vector<std::size_t> list;
    for (const auto& v : h_words) list.push_back(at(action.compose(v, u)));
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    L.orbit_of_u[ui] = std::move(list);
  }
  L.su.assign(L.s_words.size(), {});
  L.us.assign(L.s_words.size(), {});
  for (std::size_t si = 0; si < L.s_words.size(); ++si) {
    for (const auto& u : L.u_words) {
      L.su[si].push_back(at(action.compose(L.s_words[si], u)));
      L.us[si].push_back(at(action.compose(u, L.s_words[si])));
    }
  }
  if (needs.star) {
    L.vts.assign(L.s_words.size(), {});
    for (std::size_t si = 0; si < L.s_words.size(); ++si) {
      for (const auto& t : L.u_words) {
        const Word ts = action.compose(t, L.s_words[si]);
        std::vector<std::size_t> list;
        for (const auto& v : h_words) list.push_back(at(action.compose(v, ts)));
        L.vts[si].push_back(std::move(list));
      }
    }
  }
  L.x_words = action.words_up_to(L.x_length);
  std::map<Word, std::size_t> xindex;
  for (std::size_t i = 0; i < L.x_words.size(); ++i) xindex.emplace(L.x_words[i], i);
  for (const auto& s : L.s_words) L.x_idx_s.push_back(xindex.at(s));
  for (std::size_t i = 0; i < L.x_words.size(); ++i) {
    if (static_cast<int>(L.x_words[i].size()) <= H) L.x_orbit.push_back(i);
  }
  return L;
}

struct Best {
  RatioEstimate est;
  void offer(double num, double den, const Point& x, const Point& y, const Word& s) {
    const double ratio = num / den;
    ++est.samples;
    if (!est.has_witness || ratio > est.value) {
      est.value = ratio;
      est.has_witness = true;
      est.x = x;
      est.y = y;
      est.word = s;
      est.numerator = num;
      est.denominator = den;
    }
  }
  void merge(const Best& other) {
    est.samples += other.est.samples;
    if (other.est.has_witness && (!est.has_witness || other.est.value > est.value)) {
      const std::size_t n = est.samples;
      est = other.est;
      est.samples = n;
    }
  }
};

struct StarPair {
  std::size_t pair = 0;
  std::size_t s_index = 0;
  double worst_inf = 0.0;  // max over s of the truncated inf_t D(sx, o(tsy))
  double denom = 0.0;      // D(x, o_H(y))
};

struct Accum {
  Best uniform, orbit, strong;
  std::vector<StarPair> star;
};

class PairEvaluator {
 public:
  PairEvaluator(const Action& action, const Layout& layout, const SamplePlan& plan,
                const Needs& needs)
      : action_(action), space_(action.space()), L_(layout), plan_(plan), needs_(needs) {}

  void run(std::size_t index, const PointPair& pair, Accum& acc) {
    build_tables(pair);
    const std::size_t ns = L_.s_words.size();
    row(pair.x, d0_);
    ds_.resize(ns);
    for (std::size_t si = 0; si < ns; ++si) row(x_point(si), ds_[si]);
    const int H = L_.horizon;

    if (needs_.ratios) {
      for (std::size_t ui = 0; ui < L_.u_words.size(); ++ui) {
        const double den_uniform = d0_[idx_u(ui)];
        const double den_orbit = orbit_denominator(ui);
        const Point& uy = y_point(idx_u(ui));
        for (std::size_t si = 0; si < ns; ++si) {
          const double num = ds_[si][idx_su(si, ui)];
          if (den_uniform >= plan_.floor) acc.uniform.offer(num, den_uniform, pair.x, uy, L_.s_words[si]);
          if (den_orbit >= plan_.floor) acc.orbit.offer(num, den_orbit, pair.x, uy, L_.s_words[si]);
        }
      }
    }
    const double d_xy = orbit_denominator(0);
    const double d_wide = strong_denominator();
    if (needs_.strong && d_wide >= plan_.floor) {
      for (std::size_t si = 0; si < ns; ++si) {
        double num = 0.0;
        for (std::size_t ui = 0; ui < L_.u_words.size(); ++ui) {
          num = std::max(num, ds_[si][idx_us(si, ui)]);
        }
        acc.strong.offer(num, d_wide, pair.x, pair.y, L_.s_words[si]);
      }
    }
    if (needs_.star) {
      double self = 0.0;
      if (L_.single) {
        for (int n = 0; n <= H; ++n) self = std::max(self, space_.distance(pair.x, xs_[static_cast<std::size_t>(n)]));
      } else {
        for (auto i : L_.x_orbit) self = std::max(self, space_.distance(pair.x, xs_[i]));
      }
      if (d_xy <= self + plan_.tol && d_xy >= plan_.floor) {
        StarPair sp;
        sp.pair = index;
        sp.denom = d_xy;
        sp.worst_inf = -1.0;
        for (std::size_t si = 0; si < ns; ++si) {
          const double v = star_inf(si);
          if (v > sp.worst_inf) {
            sp.worst_inf = v;
            sp.s_index = si;
          }
        }
        acc.star.push_back(sp);
      }
    }
  }

 private:
  std::size_t idx_u(std::size_t ui) const { return L_.single ? ui : L_.idx_u[ui]; }
  std::size_t idx_su(std::size_t si, std::size_t ui) const {
    return L_.single ? si + 1 + ui : L_.su[si][ui];
  }
  std::size_t idx_us(std::size_t si, std::size_t ui) const {
    return L_.single ? si + 1 + ui : L_.us[si][ui];
  }
  const Point& x_point(std::size_t si) const {
    return L_.single ? xs_[si + 1] : xs_[L_.x_idx_s[si]];
  }
  const Point& y_point(std::size_t i) const { return ys_[i]; }

  double orbit_denominator(std::size_t ui) const {
    double m = 0.0;
    if (L_.single) {
      for (std::size_t n = ui; n <= ui + static_cast<std::size_t>(L_.horizon); ++n) m = std::max(m, d0_[n]);
    } else {
      for (auto j : L_.orbit_of_u[ui]) m = std::max(m, d0_[j]);
    }
    return m;
  }

  // D(x, o_{H+M}(y)); o_{H+M}(y) holds every o_H(u y) with |u| <= M
  double strong_denominator() const {
    double m = 0.0;
    if (L_.single) {
      const std::size_t top = static_cast<std::size_t>(L_.horizon + L_.window);
      for (std::size_t n = 0; n <= top; ++n) m = std::max(m, d0_[n]);
    } else {
      for (auto j : L_.strong_orbit) m = std::max(m, d0_[j]);
    }
    return m;
  }

  // min over |t| <= M of max over |v| <= H of d(sx, v t s y)
  double star_inf(std::size_t si) const {
    const auto& d = ds_[si];
    if (L_.single) {
      const std::size_t s = si + 1;
      const std::size_t H = static_cast<std::size_t>(L_.horizon);
      const std::size_t M = static_cast<std::size_t>(L_.window);
      std::deque<std::size_t> q;
      double best = INFINITY;
      for (std::size_t m = s; m <= s + M + H; ++m) {
        while (!q.empty() && d[q.back()] <= d[m]) q.pop_back();
        q.push_back(m);
        if (m >= s + H) {
          const std::size_t start = m - H;
          while (q.front() < start) q.pop_front();
          best = std::min(best, d[q.front()]);
        }
      }
      return best;
    }
    double best = INFINITY;
    for (const auto& list : L_.vts[si]) {
      double m = 0.0;
      for (auto j : list) m = std::max(m, d[j]);
      best = std::min(best, m);
    }
    return best;
  }

  void build_tables(const PointPair& pair) {
    if (L_.single) {
      const auto& g = action_.generator(0);
      xs_.resize(static_cast<std::size_t>(L_.x_length) + 1);
      xs_[0] = pair.x;
      for (std::size_t n = 1; n < xs_.size(); ++n) xs_[n] = g.apply(xs_[n - 1]);
      ys_.resize(static_cast<std::size_t>(L_.y_length) + 1);
      ys_[0] = pair.y;
      for (std::size_t n = 1; n < ys_.size(); ++n) ys_[n] = g.apply(ys_[n - 1]);
    } else {
      xs_ = orbit(action_, pair.x, L_.x_length).points();
      ys_ = orbit(action_, pair.y, L_.y_length).points();
    }
    flat_ = false;
    if (const auto metric = space_.flat_metric()) {
      const std::size_t dim = pair.y.coords.size();
      flat_ = std::all_of(ys_.begin(), ys_.end(), [dim](const Point& p) { return p.coords.size() == dim; });
      if (flat_) {
        metric_ = *metric;
        packed_ = pack(ys_, dim);
      }
    }
  }

  void row(const Point& p, std::vector<double>& out) {
    out.resize(ys_.size());
    if (flat_ && p.coords.size() == packed_.dim) {
      kernels::distances_to_rows(metric_, p.coords, packed_.rows, packed_.dim, out);
      return;
    }
    for (std::size_t i = 0; i < ys_.size(); ++i) out[i] = space_.distance(p, ys_[i]);
  }

  const Action& action_;
  const MetricSpace& space_;
  const Layout& L_;
  const SamplePlan& plan_;
  Needs needs_;
  std::vector<Point> xs_, ys_;
  bool flat_ = false;
  kernels::Metric metric_ = kernels::Metric::L2;
  PackedPoints packed_;
  std::vector<double> d0_;
  std::vector<std::vector<double>> ds_;
};

Accum run_pairs(const Action& action, const SamplePlan& plan, const Needs& needs,
                const std::vector<PointPair>& pairs, Layout& layout_out) {
  layout_out = make_layout(action, plan, needs);
  const std::size_t workers = std::max<std::size_t>(1, std::min(plan.workers, pairs.size()));
  std::vector<Accum> parts(workers);
  auto job = [&](std::size_t w) {
    PairEvaluator eval(action, layout_out, plan, needs);
    const std::size_t begin = pairs.size() * w / workers;
    const std::size_t end = pairs.size() * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i) eval.run(i, pairs[i], parts[w]);
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(job, w);
    for (auto& t : threads) t.join();
  }
  Accum total = std::move(parts[0]);
  for (std::size_t w = 1; w < workers; ++w) {
    total.uniform.merge(parts[w].uniform);
    total.orbit.merge(parts[w].orbit);
    total.strong.merge(parts[w].strong);
    total.star.insert(total.star.end(), parts[w].star.begin(), parts[w].star.end());
  }
  return total;
}

StarReport summarize_star(double k, const Accum& acc, const std::vector<PointPair>& pairs,
                          const Layout& layout, const SamplePlan& plan) {
  if (!(k > 0.0)) throw std::domain_error("check_star: k must be positive");
  StarReport rep;
  rep.k = k;
  rep.gated_pairs = acc.star.size();
  if (acc.star.empty()) {
    rep.inconclusive = true;
    rep.pass = true;
    return rep;
  }
  rep.inconclusive = false;
  bool first = true;
  for (const auto& sp : acc.star) {
    const double margin = sp.worst_inf - k * sp.denom;
    if (first || margin > rep.worst_margin) {
      first = false;
      rep.worst_margin = margin;
      rep.has_witness = true;
      rep.x = pairs[sp.pair].x;
      rep.y = pairs[sp.pair].y;
      rep.word = layout.s_words[sp.s_index];
      rep.inf_value = sp.worst_inf;
      rep.bound = k * sp.denom;
    }
  }
  rep.pass = rep.worst_margin <= plan.tol;
  rep.advisory = !rep.pass;
  return rep;
}

void require_samples(const RatioEstimate& est, const char* what) {
  if (est.samples == 0) {
    throw std::domain_error(std::string(what) + ": degenerate sample, every pair was below the floor");
  }
}

}  // namespace

std::vector<PointPair> sample_pairs(const Action& action, const SamplePlan& plan) {
  const MetricSpace& space = action.space();
  std::vector<PointPair> out;
  for (const auto& p : plan.explicit_pairs) {
    if (!space.contains(p.x, 1e-12) || !space.contains(p.y, 1e-12)) {
      throw UsageError("explicit pair lies outside " + space.id());
    }
    out.push_back(p);
  }
  if (plan.anchors) {
    const auto anchors = space.anchors();
    std::size_t added = 0;
    for (const auto& a : anchors) {
      for (const auto& b : anchors) {
        if (added++ >= plan.max_anchor_pairs) break;
        out.push_back({a, b});
      }
    }
  }
  if (plan.fixed_x && !space.contains(*plan.fixed_x, 1e-12)) {
    throw UsageError("fixed_x lies outside " + space.id());
  }
  Rng rng(split_seed(plan.seed, 0));
  for (std::size_t i = 0; i < plan.pairs; ++i) {
    Point x = plan.fixed_x ? *plan.fixed_x : space.sample(rng);
    Point y = space.sample(rng);
    out.push_back({std::move(x), std::move(y)});
  }
  if (out.empty()) throw UsageError("sample plan produced no pairs");
  return out;
}

RatioEstimate estimate_uniform(const Action& action, const SamplePlan& plan) {
  const auto pairs = sample_pairs(action, plan);
  Layout layout;
  const auto acc = run_pairs(action, plan, {true, false, false}, pairs, layout);
  require_samples(acc.uniform.est, "estimate_uniform");
  return acc.uniform.est;
}

RatioEstimate estimate_orbit(const Action& action, const SamplePlan& plan) {
  const auto pairs = sample_pairs(action, plan);
  Layout layout;
  const auto acc = run_pairs(action, plan, {true, false, false}, pairs, layout);
  require_samples(acc.orbit.est, "estimate_orbit");
  return acc.orbit.est;
}

RatioEstimate estimate_strong(const Action& action, const SamplePlan& plan) {
  const auto pairs = sample_pairs(action, plan);
  Layout layout;
  const auto acc = run_pairs(action, plan, {false, true, false}, pairs, layout);
  require_samples(acc.strong.est, "estimate_strong");
  return acc.strong.est;
}

StarReport check_star(const Action& action, double k, const SamplePlan& plan) {
  if (!(k > 0.0)) throw std::domain_error("check_star: k must be positive");
  const auto pairs = sample_pairs(action, plan);
  Layout layout;
  const auto acc = run_pairs(action, plan, {false, false, true}, pairs, layout);
  return summarize_star(k, acc, pairs, layout, plan);
}

LipschitzReport analyze(const Action& action, const SamplePlan& plan,
                        const std::vector<double>& star_ks) {
  const auto pairs = sample_pairs(action, plan);
  Layout layout;
  const auto acc = run_pairs(action, plan, {true, true, !star_ks.empty()}, pairs, layout);
  LipschitzReport rep;
  rep.action = action.name();
  rep.space_id = action.space().id();
  rep.law = std::string(law_name(action.law()));
  rep.plan = plan;
  rep.base_pairs = pairs.size();
  rep.uniform = acc.uniform.est;
  rep.orbit = acc.orbit.est;
  rep.strong = acc.strong.est;
  for (double k : star_ks) rep.star.push_back(summarize_star(k, acc, pairs, layout, plan));
  return rep;
}

HierarchyCheck check_hierarchy(const LipschitzReport& report, bool strong_applies, double tol) {
  HierarchyCheck out;
  if (report.orbit.samples > 0 && report.uniform.samples > 0 &&
      report.orbit.value > report.uniform.value + tol) {
    out.pass = false;
    out.detail = "k_orbit " + format_number(report.orbit.value) + " exceeds k_uniform " +
                 format_number(report.uniform.value);
  }
  if (strong_applies) {
    out.strong_checked = true;
    if (report.strong.samples > 0 && report.orbit.samples > 0 &&
        report.strong.value > report.orbit.value + tol) {
      out.pass = false;
      if (!out.detail.empty()) out.detail += "; ";
      out.detail += "k_strong " + format_number(report.strong.value) + " exceeds k_orbit " +
                    format_number(report.orbit.value);
    }
  }
  if (out.pass) out.detail = "ok";
  return out;
}

HierarchyCheck check_hierarchy(const LipschitzReport& report, const Action& action, double tol) {
  const bool applies = action.law() != CompositionLaw::Free || action.generator_count() == 1;
  return check_hierarchy(report, applies, tol);
}

}  // namespace ofl
