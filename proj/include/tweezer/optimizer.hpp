#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tweezer/evolve.hpp"
#include "tweezer/nelder_mead.hpp"
#include "tweezer/pulses.hpp"

namespace tw {

struct BasisConfig {
  int n_functions = 6;                 // per control, per super-iteration
  double center_lo = 0.1, center_hi = 0.9;   // fractions of the active window
  double width_lo = 0.05, width_hi = 0.3;
  std::uint64_t seed = 1;
};

// Windowed sigmoid bump on [t_lo, t_hi]: zero value and slope at both edges.
struct BasisFunction {
  double t_lo = 0.0, t_hi = 0.0;
  double center = 0.5;  // fraction of the window
  double width = 0.1;
  double operator()(double t) const;
};

// Deterministic draw for (cfg.seed, si_index).
std::vector<BasisFunction> dress_basis(const BasisConfig& cfg, double t_lo, double t_hi,
                                       int si_index);

enum class ControlSelect { position_only, amplitude_only, both };

struct OptimizerConfig {
  int n_superiterations = 4;
  int max_evals_per_si = 400;
  double simplex_init_scale = 0.05;  // times d (position) / amplitude_cap (amplitude)
  double convergence_tol = 1e-7;
  ControlSelect controls = ControlSelect::both;
  double amplitude_cap = 0.0;  // J; 0 means "use the guess pulse's global max"
  std::uint64_t seed = 1;
};

// Adds the basis expansion to the guess: position corrections live in the
// transport window, amplitude corrections in the capture-to-release window,
// amplitudes clamped to [0, cap]. Boundary conditions survive by construction.
ControlPulse apply_correction(const ControlPulse& guess, std::span<const double> coeffs,
                              const std::vector<BasisFunction>& position_basis,
                              const std::vector<BasisFunction>& amplitude_basis,
                              double amplitude_cap, const PhysicalParams& p);

// Everything the objective needs to score a candidate pulse.
struct TransportProblem {
  PhysicalParams params;
  SpatialGrid grid;
  WaveFunction psi0;
  WaveFunction target;
  EvolutionConfig evo;

  static TransportProblem standard(const PhysicalParams& p, const EvolutionConfig& evo,
                                   double padding = 2e-6, double dx_target = 0.02e-6);
};

// Waiting-stage maximum infidelity; evolution failures score 1 so the direct
// search keeps going.
double objective(const ControlPulse& pulse, const TransportProblem& prob, std::string* note = nullptr);

struct OptimizationResult {
  ControlPulse best_pulse;
  double best_objective = 0.0;
  double guess_objective = 0.0;
  std::vector<double> objective_history;      // best-so-far per evaluation
  std::vector<double> superiteration_best;    // best after each super-iteration
  int evaluations_used = 0;
  std::vector<std::uint64_t> seed_chain;
  std::vector<std::string> notes;
};

OptimizationResult dcrab_optimize(const ControlPulse& guess, const TransportProblem& prob,
                                  const BasisConfig& bcfg, const OptimizerConfig& ocfg);

std::string optimization_to_json(const OptimizationResult& r, const BasisConfig& bcfg,
                                 const OptimizerConfig& ocfg);

}  // namespace tw
