#include "ofl/report_io.hpp"

#include <fstream>

#include "ofl/scenario.hpp"

namespace ofl {

using nlohmann::json;

namespace {

json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json word_json(const Word& w) { return word_to_string(w); }

}  // namespace

std::string format_point(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    if (i) s += ';';
    s += format_number(p.coords[i]);
  }
  if (p.tail != 0.0 || p.coords.empty()) s += "|" + format_number(p.tail);
  if (p.rational) s += 'q';
  return s;
}

void CsvTable::add(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw std::logic_error("csv row has the wrong width");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += csv_field(r[i]);
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

json to_json(const SamplePlan& plan) {
  json pairs = json::array();
  for (const auto& p : plan.explicit_pairs) pairs.push_back({point_to_json(p.x), point_to_json(p.y)});
  json j{{"seed", plan.seed},
         {"pairs", plan.pairs},
         {"horizon", plan.horizon},
         {"words", plan.words},
         {"window", plan.effective_window()},
         {"anchors", plan.anchors},
         {"max_anchor_pairs", plan.max_anchor_pairs},
         {"explicit_pairs", pairs},
         {"floor", plan.floor},
         {"tol", plan.tol},
         {"workers", plan.workers}};
  if (plan.fixed_x) j["fixed_x"] = point_to_json(*plan.fixed_x);
  return j;
}

json to_json(const RatioEstimate& e) {
  json j{{"value", e.value}, {"samples", e.samples}};
  if (e.has_witness) {
    j["witness"] = {{"x", point_to_json(e.x)},
                    {"y", point_to_json(e.y)},
                    {"word", word_json(e.word)},
                    {"numerator", e.numerator},
                    {"denominator", e.denominator}};
  }
  return j;
}

json to_json(const StarReport& s) {
  json j{{"k", s.k},
         {"worst_margin", s.inconclusive ? json(nullptr) : json(s.worst_margin)},
         {"gated_pairs", s.gated_pairs},
         {"pass", s.pass},
         {"inconclusive", s.inconclusive},
         {"advisory", s.advisory}};
  if (s.has_witness) {
    j["witness"] = {{"x", point_to_json(s.x)},
                    {"y", point_to_json(s.y)},
                    {"word", word_json(s.word)},
                    {"inf_value", s.inf_value},
                    {"bound", s.bound}};
  }
  return j;
}

json to_json(const LipschitzReport& r) {
  json stars = json::array();
  for (const auto& s : r.star) stars.push_back(to_json(s));
  return {{"action", r.action},       {"space", r.space_id},          {"law", r.law},
          {"plan", to_json(r.plan)},  {"base_pairs", r.base_pairs},   {"k_uniform", to_json(r.uniform)},
          {"k_orbit", to_json(r.orbit)}, {"k_strong", to_json(r.strong)}, {"star", stars}};
}

json to_json(const HierarchyCheck& h) {
  return {{"pass", h.pass}, {"strong_checked", h.strong_checked}, {"detail", h.detail}};
}

json to_json(const SolverTrace& t) {
  json steps = json::array();
  for (std::size_t j = 0; j < t.steps.size(); ++j) {
    const auto& s = t.steps[j];
    json rec{{"j", j},
             {"x", point_to_json(s.x)},
             {"residual", number_or_null(s.residual)},
             {"r_est", number_or_null(s.r_est)},
             {"self_orbit_radius", number_or_null(s.self_orbit_radius)},
             {"orbit_diameter", number_or_null(s.orbit_diameter)},
             {"step_length", number_or_null(s.step_length)},
             {"tail_radius", number_or_null(s.tail_radius)},
             {"contraction", number_or_null(s.contraction)}};
    if (std::isfinite(s.mu)) {
      rec["mu"] = s.mu;
      rec["alpha"] = s.alpha;
      rec["s0"] = word_json(s.s0);
    }
    steps.push_back(std::move(rec));
  }
  json j{{"solver", t.solver},
         {"outcome", std::string(outcome_name(t.outcome))},
         {"iterations", t.steps.empty() ? 0 : t.steps.size() - 1},
         {"final_residual", number_or_null(t.final_residual)},
         {"notes", t.notes},
         {"steps", steps}};
  if (t.outcome == Outcome::CycleDetected) j["cycle_period"] = t.cycle_period;
  if (t.fixed_point) j["fixed_point"] = point_to_json(*t.fixed_point);
  return j;
}

json to_json(const KappaBracket& b) {
  json j{{"lower", b.lower},     {"upper", b.upper},         {"budget", b.budget},
         {"configs_used", b.configs_used}, {"seed", b.seed}, {"mu_grid", b.mu_grid},
         {"alpha_grid", b.alpha_grid}};
  if (b.lower_mu) j["lower_witness"] = {{"mu", *b.lower_mu}, {"alpha", *b.lower_alpha}};
  if (b.falsifier) {
    const auto& f = *b.falsifier;
    j["falsifier"] = {{"x", point_to_json(f.x)}, {"y", point_to_json(f.y)}, {"r", f.r},
                      {"p", point_to_json(f.p)}, {"q", point_to_json(f.q)},
                      {"k_needed", f.k_needed}};
  }
  if (b.failed_k) {
    json fails = json::array();
    for (const auto& f : b.failures) {
      fails.push_back({{"x", point_to_json(f.x)}, {"y", point_to_json(f.y)}, {"r", f.r},
                       {"z", point_to_json(f.z)}, {"escape", point_to_json(f.escape)}});
    }
    j["sampled_failures"] = {{"k", *b.failed_k}, {"alpha", kAlphaGrid.back()}, {"configs", fails}};
  }
  return j;
}

json to_json(const NormalStructureEstimate& n) {
  json pts = json::array();
  for (const auto& p : n.generating_points) pts.push_back(point_to_json(p));
  return {{"value", n.value},   {"sets", n.sets},         {"skipped", n.skipped},
          {"generator", n.generator}, {"radius", n.radius}, {"diameter", n.diameter},
          {"attaining_set", pts}};
}

CsvTable witness_table(const LipschitzReport& r) {
  CsvTable t({"quantity", "value", "x", "y", "word", "numerator", "denominator"});
  auto est = [&](const char* name, const RatioEstimate& e) {
    if (!e.has_witness) {
      t.add({name, format_number(e.value), "", "", "", "", ""});
      return;
    }
    t.add({name, format_number(e.value), format_point(e.x), format_point(e.y), word_to_string(e.word),
           format_number(e.numerator), format_number(e.denominator)});
  };
  est("k_uniform", r.uniform);
  est("k_orbit", r.orbit);
  est("k_strong", r.strong);
  for (const auto& s : r.star) {
    const std::string name = "star_margin(k=" + format_number(s.k) + ")";
    if (!s.has_witness) {
      t.add({name, "", "", "", "", "", ""});
      continue;
    }
    t.add({name, format_number(s.worst_margin), format_point(s.x), format_point(s.y),
           word_to_string(s.word), format_number(s.inf_value), format_number(s.bound)});
  }
  return t;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace ofl
