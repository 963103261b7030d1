#include "ofl/runner.hpp"

#include <cstdlib>
#include <ostream>

#include "ofl/geometry_constants.hpp"
#include "ofl/report_io.hpp"
#include "ofl/repro.hpp"

namespace ofl {
namespace {

using nlohmann::json;

std::string fmt(double v) { return format_number(v); }

json header(const Scenario& s, ExperimentKind kind) {
  return {{"scenario", s.name},
          {"description", s.description},
          {"kind", std::string(experiment_name(kind))},
          {"seed", s.seed}};
}

void emit(const std::filesystem::path& out, const CsvTable& summary, const json& report,
          std::ostream& log) {
  write_file(out / "summary.csv", summary.str());
  write_file(out / "report.json", dump_json(report));
  log << "wrote " << (out / "summary.csv").string() << "\n";
}

int run_analyze(const Scenario& s, const std::filesystem::path& out, std::ostream& log) {
  auto space = make_space(s.space);
  auto action = make_action(space, s.action, s.plan.horizon, s.seed);
  const auto rep = analyze(*action, s.plan, s.star_k);
  const auto hier = check_hierarchy(rep, *action);

  CsvTable t({"scenario", "space", "action", "quantity", "value", "pass", "witness_x", "witness_y",
              "word"});
  auto estimate_row = [&](const std::string& q, const RatioEstimate& e) {
    t.add({s.name, space->id(), action->name(), q, fmt(e.value), "",
           e.has_witness ? format_point(e.x) : "", e.has_witness ? format_point(e.y) : "",
           e.has_witness ? word_to_string(e.word) : ""});
  };
  estimate_row("k_uniform", rep.uniform);
  estimate_row("k_orbit", rep.orbit);
  estimate_row("k_strong", rep.strong);
  for (const auto& st : rep.star) {
    const std::string verdict = st.inconclusive ? "vacuous" : st.pass ? "pass" : "fail";
    t.add({s.name, space->id(), action->name(), "star(k=" + fmt(st.k) + ")",
           st.inconclusive ? "" : fmt(st.worst_margin),
           verdict, st.has_witness ? format_point(st.x) : "", st.has_witness ? format_point(st.y) : "",
           st.has_witness ? word_to_string(st.word) : ""});
  }
  t.add({s.name, space->id(), action->name(), "hierarchy", "", hier.pass ? "pass" : "fail", "", "", ""});

  json report = header(s, ExperimentKind::Analyze);
  report["report"] = to_json(rep);
  report["hierarchy"] = to_json(hier);
  emit(out, t, report, log);
  write_file(out / "witnesses.csv", witness_table(rep).str());

  log << "k_uniform " << fmt(rep.uniform.value) << ", k_orbit " << fmt(rep.orbit.value)
      << ", k_strong " << fmt(rep.strong.value) << "\n";
  for (const auto& st : rep.star) {
    log << "star k=" << fmt(st.k) << ": "
        << (st.inconclusive ? "vacuous" : st.pass ? "pass" : "fail") << "\n";
  }
  if (!hier.pass) {
    log << "hierarchy violated: " << hier.detail << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}

Point default_x0(const MetricSpace& space, std::uint64_t seed) {
  const auto a = space.anchors();
  if (!a.empty()) return a.front();
  Rng rng(split_seed(seed, 7));
  return space.sample(rng);
}

int run_solve(const Scenario& s, const std::filesystem::path& out, std::ostream& log) {
  auto space = make_space(s.space);
  auto action = make_action(space, s.action, s.solver.horizon, s.seed);
  const Point x0 = s.x0 ? *s.x0 : default_x0(*space, s.seed);
  if (!space->contains(x0, 1e-12)) throw UsageError("solver: x0 is outside " + space->id());

  CsvTable t({"scenario", "space", "action", "solver", "outcome", "iterations", "final_residual",
              "fixed_point", "cycle_period"});
  json traces = json::array();
  int code = kExitOk;
  for (const auto& m : s.methods) {
    SolverTrace trace;
    try {
      if (m == "picard") trace = picard(*action, x0, s.solver);
      else if (m == "orbit_center") trace = orbit_center_iteration(*action, x0, s.solver);
      else trace = lifschitz_iteration(*action, x0, s.solver);
    } catch (const UnsupportedOperation& e) {
      t.add({s.name, space->id(), action->name(), m, "unsupported", "0", "", "", ""});
      traces.push_back({{"solver", m}, {"outcome", "unsupported"}, {"reason", e.what()}});
      log << m << ": unsupported (" << e.what() << ")\n";
      continue;
    }
    std::string fixed;
    if (trace.fixed_point) {
      fixed = format_point(*trace.fixed_point);
      const double recheck = residual(*action, *trace.fixed_point);
      if (!(recheck < s.solver.epsilon)) {
        log << m << ": converged point fails the residual recheck (" << fmt(recheck) << ")\n";
        code = kExitInvariant;
      }
    }
    t.add({s.name, space->id(), action->name(), m, std::string(outcome_name(trace.outcome)),
           std::to_string(trace.steps.size() - 1), fmt(trace.final_residual), fixed,
           trace.cycle_period ? std::to_string(trace.cycle_period) : ""});
    traces.push_back(to_json(trace));
    log << m << ": " << outcome_name(trace.outcome) << " after " << trace.steps.size() - 1
        << " steps, residual " << fmt(trace.final_residual) << "\n";
  }

  json report = header(s, ExperimentKind::Solve);
  report["space"] = space->id();
  report["action"] = action->name();
  report["x0"] = point_to_json(x0);
  report["config"] = {{"epsilon", s.solver.epsilon},   {"max_iter", s.solver.max_iter},
                      {"horizon", s.solver.horizon},   {"tail_start", s.solver.tail_start},
                      {"k", s.solver.k},               {"candidates", s.solver.candidates},
                      {"seed", s.solver.seed}};
  report["runs"] = t.rows();
  emit(out, t, report, log);
  write_file(out / "trace.json", dump_json(traces));
  return code;
}

CsvTable constants_table() {
  return CsvTable({"space", "kappa_lo", "kappa_hi", "normal_est", "budget", "seed"});
}

int run_kappa(const Scenario& s, const std::filesystem::path& out, std::ostream& log) {
  auto space = make_space(s.space);
  const auto b = estimate_kappa(*space, s.budget, s.seed);
  int code = kExitOk;
  if (!(b.lower <= b.upper) || b.lower < 1.0 || b.upper > 2.0) {
    log << "kappa bracket out of order: [" << fmt(b.lower) << ", " << fmt(b.upper) << "]\n";
    code = kExitInvariant;
  }
  if (b.falsifier && !replay_falsifier(*space, *b.falsifier, b.upper)) {
    log << "stored falsifier does not replay\n";
    code = kExitInvariant;
  }
  auto t = constants_table();
  t.add({space->id(), fmt(b.lower), fmt(b.upper), "", std::to_string(s.budget), std::to_string(s.seed)});
  json report = header(s, ExperimentKind::Kappa);
  report["space"] = space->id();
  report["bracket"] = to_json(b);
  emit(out, t, report, log);
  log << "kappa in [" << fmt(b.lower) << ", " << fmt(b.upper) << "] from " << b.configs_used
      << " configurations\n";
  return code;
}

int run_normal(const Scenario& s, const std::filesystem::path& out, std::ostream& log) {
  auto space = make_space(s.space);
  const auto e = estimate_normal_coeff(*space, s.n_sets, s.seed, s.density);
  int code = kExitOk;
  if (e.value > 1.0 + 1e-9) {
    log << "normal structure estimate exceeds 1: " << fmt(e.value) << "\n";
    code = kExitInvariant;
  }
  auto t = constants_table();
  t.add({space->id(), "", "", fmt(e.value), std::to_string(s.n_sets), std::to_string(s.seed)});
  json report = header(s, ExperimentKind::Normal);
  report["space"] = space->id();
  report["estimate"] = to_json(e);
  emit(out, t, report, log);
  log << "normal structure coefficient " << fmt(e.value) << " over " << e.sets << " sets\n";
  return code;
}

int run_repro_kind(const Scenario& s, const std::filesystem::path& out, std::ostream& log) {
  ReproOptions o;
  o.seed = s.seed;
  o.workers = s.plan.workers;
  o.kappa_budget = s.budget;
  o.normal_sets = s.n_sets;
  const auto rows = run_repro(o);
  json jr = json::array();
  std::size_t failed = 0;
  for (const auto& r : rows) {
    jr.push_back({{"id", r.id},
                  {"description", r.description},
                  {"measured", r.measured},
                  {"expected", r.expected},
                  {"pass", r.pass}});
    log << (r.pass ? "pass  " : "FAIL  ") << r.id << ": " << r.measured << "\n";
    if (!r.pass) ++failed;
  }
  json report = header(s, ExperimentKind::Repro);
  report["rows"] = jr;
  report["failed"] = failed;
  emit(out, repro_table(rows), report, log);
  log << rows.size() - failed << "/" << rows.size() << " rows pass\n";
  return failed == 0 ? kExitOk : kExitInvariant;
}

}  // namespace

std::filesystem::path default_out_dir(const std::string& name, ExperimentKind kind) {
  const char* root = std::getenv("OFL_OUT");
  const std::filesystem::path base = root && *root ? root : "ofl-out";
  return base / (name + "-" + std::string(experiment_name(kind)));
}

int run_experiment(const Scenario& scenario, ExperimentKind kind, const std::filesystem::path& out,
                   std::ostream& log) {
  switch (kind) {
    case ExperimentKind::Analyze: return run_analyze(scenario, out, log);
    case ExperimentKind::Solve: return run_solve(scenario, out, log);
    case ExperimentKind::Kappa: return run_kappa(scenario, out, log);
    case ExperimentKind::Normal: return run_normal(scenario, out, log);
    case ExperimentKind::Repro: return run_repro_kind(scenario, out, log);
  }
  return kExitUsage;
}

}  // namespace ofl
