#include "tweezer/orchestrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "tweezer/discretization.hpp"
#include "tweezer/eigensolve.hpp"

namespace tw {

namespace {

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

TrajectoryKind family_kind(const PulseSelect& sel) {
  if (sel.family == "linear") return {Trajectory::linear, 0.0};
  if (sel.family == "quadratic") return {Trajectory::quadratic, 0.0};
  if (sel.family == "min_jerk") return {Trajectory::min_jerk, 0.0};
  if (sel.family == "hybrid") return {Trajectory::hybrid, sel.xi};
  throw ConfigError("not a trajectory family: " + sel.family);
}

std::string family_label(const PulseSelect& sel) {
  if (sel.family == "hybrid") return "hybrid_" + format_g(sel.xi);
  return sel.family;
}

WaveFunction single_well_ground(const SpatialGrid& grid, double center,
                                const PhysicalParams& p) {
  std::vector<double> v(grid.n_points);
  const double s2 = 2.0 * p.sigma_static * p.sigma_static;
  for (int i = 0; i < grid.n_points; ++i) {
    const double u = grid.x(i) - center;
    v[i] = -p.a_static * std::exp(-u * u / s2);
  }
  return lowest_eigenstates(grid, v, 1, p).states[0];
}

std::string sanitize(std::string s) {
  for (auto& c : s)
    if (c == ',' || c == '\n') c = ';';
  return s;
}

}  // namespace

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
}

PulseArtifacts make_pulse(const RunConfig& cfg, const PulseSelect& sel, double total_time,
                          double a_max_override) {
  const double a_max = a_max_override > 0.0 ? a_max_override : sel.a_max;
  const StageSchedule sched(total_time, 0.4);
  const int n_samples = cfg.evolution.n_steps + 1;
  PulseArtifacts out;
  if (sel.family == "sta" || sel.family == "sta_approx") {
    const double a_cr =
        sel.sta_calibrate ? calibrate_capture_depth(a_max, cfg.physical) : a_max;
    out.sta = sel.family == "sta"
                  ? build_sta_pulse(cfg.physical, a_cr, sched, n_samples)
                  : build_sta_approx_pulse(cfg.physical, a_cr, sched, n_samples);
    out.pulse = out.sta->pulse;
  } else {
    out.pulse = sample_pulse(family_kind(sel), a_max, cfg.physical, sched, n_samples);
    out.pulse.label = family_label(sel);
  }
  return out;
}

SimOutcome run_simulation(const RunConfig& cfg, const PulseSelect& sel, double total_time,
                          double a_max_override, bool with_occupation) {
  auto art = make_pulse(cfg, sel, total_time, a_max_override);
  const auto grid = build_grid(cfg.physical, cfg.padding, cfg.dx_target);
  const auto psi0 = single_well_ground(grid, 0.0, cfg.physical);
  const auto target = single_well_ground(grid, cfg.physical.separation, cfg.physical);

  auto evo = cfg.evolution;
  evo.record_occupation = with_occupation;
  SplitStepEngine engine(grid);
  SampledControls controls(art.pulse);
  auto [psi, rec] =
      engine.evolve(psi0, controls, art.pulse.schedule, evo, cfg.physical, &target);

  SimOutcome out;
  out.report = metrics::summarize(rec, art.pulse.schedule, cfg.physical);
  out.record = std::move(rec);
  out.pulse = std::move(art.pulse);
  return out;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "pulse,T_s,Amax_J,inf_max,inf_avg,inf_last,inf_std,maxN,dN,Teff_K,status\n";
  char line[320];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line,
                  "%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n",
                  r.pulse.c_str(), r.t, r.a_max, r.report.infidelity_max,
                  r.report.infidelity_avg, r.report.infidelity_last, r.report.infidelity_std,
                  r.report.max_mean_n, r.report.max_delta_n, r.report.max_t_eff_k,
                  r.status.c_str());
    out += line;
  }
  return out;
}

std::optional<double> threshold_time(const std::vector<SweepRow>& rows,
                                     const std::string& pulse_label, double threshold) {
  std::vector<const SweepRow*> mine;
  for (const auto& r : rows)
    if (r.pulse == pulse_label) mine.push_back(&r);
  std::sort(mine.begin(), mine.end(),
            [](const SweepRow* a, const SweepRow* b) { return a->t < b->t; });
  for (const auto* r : mine)
    if (r->status == "ok" && r->report.infidelity_max <= threshold) return r->t;
  return std::nullopt;
}

int cmd_simulate(const RunConfig& cfg) {
  auto out = run_simulation(cfg, cfg.pulse, cfg.total_time, 0.0, cfg.record_occupation);
  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);
  write_file((dir / "metrics.json").string(), metrics::report_to_json(out.report));
  write_file((dir / "series.csv").string(), record_to_csv(out.record));
  write_file((dir / "pulse.csv").string(), pulse_to_csv(out.pulse));
  std::cout << metrics::report_to_json(out.report);
  return 0;
}

namespace {

struct SweepJob {
  PulseSelect sel;
  double t = 0.0;
  double a_max = 0.0;  // 0: use sel.a_max
};

std::vector<SweepRow> run_jobs(const RunConfig& cfg, const std::vector<SweepJob>& jobs) {
  std::vector<SweepRow> rows(jobs.size());
  const int n_jobs = effective_jobs(cfg);
  const auto total = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic) num_threads(n_jobs)
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    const auto& job = jobs[i];
    SweepRow row;
    row.pulse = job.sel.family == "hybrid" ? family_label(job.sel) : job.sel.family;
    row.t = job.t;
    row.a_max = job.a_max > 0.0 ? job.a_max : job.sel.a_max;
    try {
      auto out = run_simulation(cfg, job.sel, job.t, job.a_max, cfg.record_occupation);
      row.report = out.report;
    } catch (const std::exception& e) {
      row.status = "failed:" + sanitize(e.what());
    }
    rows[i] = row;
  }
  return rows;
}

}  // namespace

int cmd_sweep_time(const RunConfig& cfg) {
  if (cfg.sweep.t_values.size() < 2)
    throw ConfigError("[sweep] t_ms needs at least two values for sweep-time");
  const auto families = cfg.sweep.families.empty()
                            ? std::vector<PulseSelect>{cfg.pulse}
                            : cfg.sweep.families;
  std::vector<SweepJob> jobs;
  for (const auto& sel : families)
    for (double t : cfg.sweep.t_values) jobs.push_back({sel, t, 0.0});

  auto rows = run_jobs(cfg, jobs);
  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);
  write_file((dir / "sweep.csv").string(), sweep_to_csv(rows));

  nlohmann::json thr;
  const double tau = tau_static(cfg.physical);
  for (const auto& sel : families) {
    const std::string label = sel.family == "hybrid" ? family_label(sel) : sel.family;
    const auto t = threshold_time(rows, label, cfg.sweep.threshold);
    if (t) {
      thr[label]["threshold_s"] = *t;
      thr[label]["threshold_tau_st"] = *t / tau;
    } else {
      thr[label] = nullptr;
    }
  }
  write_file((dir / "threshold.json").string(), thr.dump(2) + "\n");
  std::cout << thr.dump(2) << "\n";
  return 0;
}

int cmd_heatmap(const RunConfig& cfg) {
  if (cfg.sweep.t_values.size() < 2 || cfg.sweep.amax_values.size() < 2)
    throw ConfigError("heatmap needs at least 2 values on both the T and A_max axes");
  const auto families = cfg.sweep.families.empty()
                            ? std::vector<PulseSelect>{cfg.pulse}
                            : cfg.sweep.families;
  std::vector<SweepJob> jobs;
  for (const auto& sel : families)
    for (double t : cfg.sweep.t_values)
      for (double a : cfg.sweep.amax_values) jobs.push_back({sel, t, a});

  auto rows = run_jobs(cfg, jobs);
  std::filesystem::create_directories(cfg.out_dir);
  write_file((std::filesystem::path(cfg.out_dir) / "heatmap.csv").string(), sweep_to_csv(rows));
  return 0;
}

int cmd_optimize(const RunConfig& cfg) {
  const auto families = cfg.sweep.families.empty()
                            ? std::vector<PulseSelect>{cfg.pulse}
                            : cfg.sweep.families;
  const auto t_values = cfg.sweep.t_values.empty() ? std::vector<double>{cfg.total_time}
                                                   : cfg.sweep.t_values;
  auto evo = cfg.evolution;
  const auto problem = TransportProblem::standard(cfg.physical, evo, cfg.padding, cfg.dx_target);

  struct OptJob {
    PulseSelect sel;
    double t;
  };
  std::vector<OptJob> jobs;
  for (const auto& sel : families)
    for (double t : t_values) jobs.push_back({sel, t});

  struct OptRow {
    std::string label;
    double t = 0.0;
    OptimizationResult result;
    double best_heating = std::numeric_limits<double>::quiet_NaN();
    std::string status = "ok";
  };
  std::vector<OptRow> rows(jobs.size());
  const int n_jobs = effective_jobs(cfg);
  const auto total = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic) num_threads(n_jobs)
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    OptRow row;
    row.label = jobs[i].sel.family == "hybrid" ? family_label(jobs[i].sel) : jobs[i].sel.family;
    row.t = jobs[i].t;
    try {
      auto art = make_pulse(cfg, jobs[i].sel, jobs[i].t);
      row.result = dcrab_optimize(art.pulse, problem, cfg.basis, cfg.optimizer);
      // transient-heating check for the accepted pulse
      SplitStepEngine engine(problem.grid);
      SampledControls controls(row.result.best_pulse);
      auto occ_cfg = cfg.evolution;
      occ_cfg.record_occupation = true;
      auto [psi, rec] = engine.evolve(problem.psi0, controls, row.result.best_pulse.schedule,
                                      occ_cfg, cfg.physical, &problem.target);
      const auto rep = metrics::summarize(rec, row.result.best_pulse.schedule, cfg.physical);
      row.best_heating = rep.max_mean_n + rep.max_delta_n;
    } catch (const std::exception& e) {
      row.status = "failed:" + sanitize(e.what());
    }
    rows[i] = row;
  }

  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);
  std::string cmp = "pulse,T_s,guess_inf_max,best_inf_max,improvement,evals,best_maxN_plus_dN,status\n";
  for (const auto& r : rows) {
    char line[320];
    const double imp = r.result.best_objective > 0.0
                           ? r.result.guess_objective / r.result.best_objective
                           : std::numeric_limits<double>::infinity();
    std::snprintf(line, sizeof line, "%s,%.17g,%.17g,%.17g,%.17g,%d,%.17g,%s\n", r.label.c_str(),
                  r.t, r.result.guess_objective, r.result.best_objective, imp,
                  r.result.evaluations_used, r.best_heating, r.status.c_str());
    cmp += line;
    if (r.status == "ok") {
      const std::string stem = r.label + "_T" + format_g(units::time_to_ms(r.t)) + "ms";
      write_file((dir / ("optimize_" + stem + ".json")).string(),
                 optimization_to_json(r.result, cfg.basis, cfg.optimizer));
      write_file((dir / ("best_pulse_" + stem + ".csv")).string(),
                 pulse_to_csv(r.result.best_pulse));
    }
  }
  write_file((dir / "comparison.csv").string(), cmp);
  std::cout << cmp;
  return 0;
}

SplittingComparison compare_splittings(const PhysicalParams& p, double total_time, int n_steps,
                                       double padding, double dx_target) {
  const auto grid = build_grid(p, padding, dx_target);
  const double w = omega_static(p);
  const double l = std::sqrt(hbar / (p.mass * w));
  std::vector<double> v(grid.n_points);
  WaveFunction psi0;
  psi0.grid = grid;
  psi0.amp.resize(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    v[i] = 0.5 * p.mass * w * w * x * x;
    psi0.amp[i] = std::exp(-x * x / (2.0 * l * l));
  }
  psi0.normalize();

  SplittingComparison out;
  SplitStepEngine engine(grid);
  for (auto scheme : {Splitting::strang, Splitting::single}) {
    EvolutionConfig cfg;
    cfg.n_steps = n_steps;
    cfg.scheme = scheme;
    cfg.record_stride = 10;
    cfg.record_kinetic = false;
    auto [psi, rec] = engine.evolve_static(psi0, v, total_time, cfg, p, &psi0);
    double mean = 0.0, mx = 0.0;
    for (double x : rec.infidelity) {
      mean += x;
      mx = std::max(mx, x);
    }
    mean /= static_cast<double>(rec.infidelity.size());
    if (scheme == Splitting::strang) {
      out.strang_final = rec.infidelity.back();
      out.strang_series_mean = mean;
      out.strang_series_max = mx;
    } else {
      out.single_final = rec.infidelity.back();
      out.single_series_mean = mean;
      out.single_series_max = mx;
    }
  }
  return out;
}

int cmd_validate(const RunConfig& cfg) {
  struct Item {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::vector<Item> items;
  const auto& p = cfg.physical;
  const double w = omega_static(p);

  {  // harmonic-oscillator eigenvalue oracle
    const auto grid = build_grid(p, cfg.padding, cfg.dx_target);
    std::vector<double> v(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
      const double x = grid.x(i);
      v[i] = 0.5 * p.mass * w * w * x * x;
    }
    auto eig = lowest_eigenstates(grid, v, 4, p);
    bool ok = true;
    double worst = 0.0;
    for (int n = 0; n < 4; ++n) {
      const double exact = hbar * w * (n + 0.5);
      const double rel = std::abs(eig.energies[n] - exact) / exact;
      worst = std::max(worst, rel);
      ok = ok && rel < (n == 0 ? 1e-3 : 2e-3);
    }
    items.push_back({"harmonic eigenvalues", ok,
                     "worst relative deviation " + format_g(worst)});
  }

  {  // discretization error at the configured step
    const double e = discretization_error_at(cfg.dx_target, p);
    items.push_back({"discretization error at dx_target", e <= 1e-4,
                     "E(" + format_g(cfg.dx_target * 1e6) + " um) = " + format_g(e)});
  }

  {  // discretization fit
    const auto dxs = default_dx_values();
    const auto fit = discretization_error_study(dxs, p);
    const bool mono = std::is_sorted(fit.error.begin(), fit.error.end());
    const bool ok = fit.b >= 1.8 && fit.b <= 2.8 && mono;
    items.push_back({"discretization fit", ok,
                     "a=" + format_g(fit.a) + " b=" + format_g(fit.b) + " c=" + format_g(fit.c) +
                         (mono ? "" : " (error not monotone)")});
  }

  {  // splitting comparison
    auto c = compare_splittings(p, 3e-3, 5000, cfg.padding, cfg.dx_target);
    const double ratio = c.single_final / c.strang_final;
    const bool ok = c.strang_final < 1e-6 && c.single_final >= 3e-5 && c.single_final <= 1e-3 &&
                    ratio >= 100.0;
    std::string detail = "strang=" + format_g(c.strang_final) +
                         " single=" + format_g(c.single_final) + " ratio=" + format_g(ratio);
    if (cfg.evolution.scheme == Splitting::single)
      detail += " [configured scheme 'single' is the low-order one: expect ~" +
                format_g(ratio) + "x larger error]";
    items.push_back({"splitting comparison", ok, detail});
  }

  {  // kinetic virial oracle
    const auto grid = build_grid(p, cfg.padding, cfg.dx_target);
    const double l = std::sqrt(hbar / (p.mass * w));
    WaveFunction psi;
    psi.grid = grid;
    psi.amp.resize(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
      const double x = grid.x(i);
      psi.amp[i] = std::exp(-x * x / (2.0 * l * l));
    }
    psi.normalize();
    const double kin = kinetic_expectation(psi, p);
    const double rel = std::abs(kin - hbar * w / 4.0) / (hbar * w / 4.0);
    items.push_back({"kinetic virial", rel < 5e-3, "relative deviation " + format_g(rel)});
  }

  {  // norm conservation on a default STA run
    bool ok = true;
    std::string detail;
    try {
      auto out = run_simulation(cfg, parse_pulse_name("sta", cfg.pulse), 1e-3);
      double drift = 0.0;
      for (double n : out.record.norm) drift = std::max(drift, std::abs(n - 1.0));
      ok = drift < 1e-10;
      detail = "max |norm-1| = " + format_g(drift);
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    items.push_back({"norm conservation (sta, T=1 ms)", ok, detail});
  }

  nlohmann::json j;
  bool all = true;
  for (const auto& it : items) {
    std::cout << (it.pass ? "[PASS] " : "[FAIL] ") << it.name << ": " << it.detail << "\n";
    j[it.name] = {{"pass", it.pass}, {"detail", it.detail}};
    all = all && it.pass;
  }
  std::filesystem::create_directories(cfg.out_dir);
  write_file((std::filesystem::path(cfg.out_dir) / "validate_report.json").string(),
             j.dump(2) + "\n");
  return all ? 0 : 1;
}

int cmd_export_pulse(const RunConfig& cfg) {
  auto art = make_pulse(cfg, cfg.pulse, cfg.total_time);
  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);
  write_file((dir / "pulse.csv").string(), pulse_to_csv(art.pulse));
  if (art.sta) {
    nlohmann::json j;
    j["omega_tilde_sq"] = art.sta->omega_tilde_sq;
    j["a_max_cr"] = art.sta->a_max_cr;
    j["global_max"] = art.sta->global_max_amplitude;
    write_file((dir / "sta.json").string(), j.dump(2) + "\n");
  }
  return 0;
}

}  // namespace tw
