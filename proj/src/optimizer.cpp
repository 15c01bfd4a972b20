#include "tweezer/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "tweezer/eigensolve.hpp"
#include "tweezer/metrics.hpp"
#include "tweezer/potentials.hpp"

namespace tw {

namespace {
// Uniform double in [lo, hi) from the raw 64-bit stream; the standard library
// distributions are implementation-defined, which would break byte-stable
// replay across toolchains.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}
}  // namespace

double BasisFunction::operator()(double t) const {
  const double span = t_hi - t_lo;
  const double s = (t - t_lo) / span;
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double edge = 16.0 * s * s * (1.0 - s) * (1.0 - s);
  const double z = (s - center) / width;
  return edge / (1.0 + std::exp(-z));
}

std::vector<BasisFunction> dress_basis(const BasisConfig& cfg, double t_lo, double t_hi,
                                       int si_index) {
  if (!(t_hi > t_lo)) throw std::invalid_argument("basis window is empty");
  std::mt19937_64 rng(cfg.seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(si_index));
  std::vector<BasisFunction> out;
  out.reserve(cfg.n_functions);
  for (int i = 0; i < cfg.n_functions; ++i) {
    BasisFunction b;
    b.t_lo = t_lo;
    b.t_hi = t_hi;
    b.center = uniform(rng, cfg.center_lo, cfg.center_hi);
    b.width = uniform(rng, cfg.width_lo, cfg.width_hi);
    out.push_back(b);
  }
  return out;
}

ControlPulse apply_correction(const ControlPulse& guess, std::span<const double> coeffs,
                              const std::vector<BasisFunction>& position_basis,
                              const std::vector<BasisFunction>& amplitude_basis,
                              double amplitude_cap, const PhysicalParams& p) {
  if (coeffs.size() != position_basis.size() + amplitude_basis.size())
    throw std::invalid_argument("coefficient count does not match the basis");
  ControlPulse out = guess;
  const std::size_t np = position_basis.size();
  for (std::size_t i = 0; i < out.times.size(); ++i) {
    const double t = out.times[i];
    double dx = 0.0;
    for (std::size_t j = 0; j < np; ++j) dx += coeffs[j] * position_basis[j](t);
    out.positions[i] += dx;
    double da = 0.0;
    for (std::size_t j = 0; j < amplitude_basis.size(); ++j)
      da += coeffs[np + j] * amplitude_basis[j](t);
    out.amplitudes[i] = std::clamp(out.amplitudes[i] + da, 0.0, amplitude_cap);
  }
  out.validate(p);
  return out;
}

TransportProblem TransportProblem::standard(const PhysicalParams& p, const EvolutionConfig& evo,
                                            double padding, double dx_target) {
  TransportProblem prob;
  prob.params = p;
  prob.grid = build_grid(p, padding, dx_target);
  prob.evo = evo;
  // initial and target states are the ground states of single wells at 0 and d
  const auto xs = prob.grid.positions();
  std::vector<double> v(prob.grid.n_points);
  for (int i = 0; i < prob.grid.n_points; ++i) {
    const double u = xs[i];
    v[i] = -p.a_static * std::exp(-u * u / (2.0 * p.sigma_static * p.sigma_static));
  }
  prob.psi0 = lowest_eigenstates(prob.grid, v, 1, p).states[0];
  for (int i = 0; i < prob.grid.n_points; ++i) {
    const double u = xs[i] - p.separation;
    v[i] = -p.a_static * std::exp(-u * u / (2.0 * p.sigma_static * p.sigma_static));
  }
  prob.target = lowest_eigenstates(prob.grid, v, 1, p).states[0];
  return prob;
}

double objective(const ControlPulse& pulse, const TransportProblem& prob, std::string* note) {
  try {
    SplitStepEngine engine(prob.grid);
    SampledControls controls(pulse);
    auto cfg = prob.evo;
    cfg.record_occupation = false;
    auto [psi, rec] =
        engine.evolve(prob.psi0, controls, pulse.schedule, cfg, prob.params, &prob.target);
    return metrics::waiting_stage_stats(rec, pulse.schedule).max;
  } catch (const std::exception& e) {
    if (note) *note = e.what();
    return 1.0;
  }
}

OptimizationResult dcrab_optimize(const ControlPulse& guess, const TransportProblem& prob,
                                  const BasisConfig& bcfg, const OptimizerConfig& ocfg) {
  guess.validate(prob.params);
  OptimizationResult res;
  res.best_pulse = guess;
  res.guess_objective = objective(guess, prob);
  res.best_objective = res.guess_objective;
  res.superiteration_best.push_back(res.best_objective);

  const double cap = ocfg.amplitude_cap > 0.0
                         ? ocfg.amplitude_cap
                         : *std::max_element(guess.amplitudes.begin(), guess.amplitudes.end());
  const auto& sched = guess.schedule;
  const bool use_pos = ocfg.controls != ControlSelect::amplitude_only;
  const bool use_amp = ocfg.controls != ControlSelect::position_only;
  if (!use_pos && !use_amp) throw std::invalid_argument("no controls selected");

  for (int si = 0; si < ocfg.n_superiterations; ++si) {
    BasisConfig bc = bcfg;
    bc.seed = bcfg.seed;
    res.seed_chain.push_back(bc.seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(si));
    const auto pos_basis = use_pos ? dress_basis(bc, sched.t1(), sched.t2(), si)
                                   : std::vector<BasisFunction>{};
    // fresh draws for the amplitude control: offset the super-iteration index
    const auto amp_basis = use_amp
                               ? dress_basis(bc, 0.0, sched.t3(), si + 1000000)
                               : std::vector<BasisFunction>{};
    const ControlPulse base = res.best_pulse;

    std::string note;
    auto f = [&](const std::vector<double>& coeffs) {
      auto candidate = apply_correction(base, coeffs, pos_basis, amp_basis, cap, prob.params);
      const double v = objective(candidate, prob, &note);
      if (!note.empty()) {
        res.notes.push_back("si " + std::to_string(si) + ": " + note);
        note.clear();
      }
      return v;
    };

    NelderMeadOptions nm;
    nm.max_evals = ocfg.max_evals_per_si;
    nm.convergence_tol = ocfg.convergence_tol;
    for (std::size_t j = 0; j < pos_basis.size(); ++j)
      nm.init_step.push_back(ocfg.simplex_init_scale * prob.params.separation);
    for (std::size_t j = 0; j < amp_basis.size(); ++j)
      nm.init_step.push_back(ocfg.simplex_init_scale * cap);

    std::vector<double> x0(pos_basis.size() + amp_basis.size(), 0.0);
    auto nm_res = nelder_mead(f, x0, nm);
    res.evaluations_used += nm_res.evaluations;
    for (double h : nm_res.history)
      res.objective_history.push_back(std::min(h, res.best_objective));

    if (nm_res.f_best < res.best_objective) {
      res.best_objective = nm_res.f_best;
      res.best_pulse =
          apply_correction(base, nm_res.x_best, pos_basis, amp_basis, cap, prob.params);
    }
    res.superiteration_best.push_back(res.best_objective);
  }
  return res;
}

std::string optimization_to_json(const OptimizationResult& r, const BasisConfig& bcfg,
                                 const OptimizerConfig& ocfg) {
  nlohmann::json j;
  j["guess_objective"] = r.guess_objective;
  j["best_objective"] = r.best_objective;
  j["evaluations_used"] = r.evaluations_used;
  j["superiteration_best"] = r.superiteration_best;
  j["objective_history"] = r.objective_history;
  j["seed_chain"] = r.seed_chain;
  j["notes"] = r.notes;
  j["config"]["n_functions"] = bcfg.n_functions;
  j["config"]["basis_seed"] = bcfg.seed;
  j["config"]["n_superiterations"] = ocfg.n_superiterations;
  j["config"]["max_evals_per_si"] = ocfg.max_evals_per_si;
  j["config"]["simplex_init_scale"] = ocfg.simplex_init_scale;
  j["config"]["convergence_tol"] = ocfg.convergence_tol;
  j["config"]["amplitude_cap_j"] = ocfg.amplitude_cap;
  j["config"]["controls"] = ocfg.controls == ControlSelect::both
                                ? "position,amplitude"
                                : (ocfg.controls == ControlSelect::position_only ? "position"
                                                                                 : "amplitude");
  return j.dump(2) + "\n";
}

}  // namespace tw
