#pragma once

#include <string>
#include <vector>

#include "tweezer/evolve.hpp"
#include "tweezer/grid.hpp"
#include "tweezer/pulses.hpp"

namespace tw::metrics {

// 1 - |<psi|target> dx|^2
double infidelity(const WaveFunction& psi, const WaveFunction& target);

struct WaitingStats {
  double max = 0.0;
  double avg = 0.0;
  double last = 0.0;
  double stddev = 0.0;  // population convention
};

// Statistics of the recorded infidelity series restricted to the waiting stage.
WaitingStats waiting_stage_stats(const EvolutionRecord& rec, const StageSchedule& sched);

struct Occupation {
  double mean_n = 0.0;
  double delta_n = 0.0;
  std::vector<double> populations;
  double leakage = 0.0;  // 1 - sum(populations)
};

// Projects psi on the lowest bound states of the moving-tweezer-only
// Hamiltonian at time t (statics excluded) and returns the level statistics.
Occupation moving_occupation(const WaveFunction& psi, double t, const ControlEvaluator& controls,
                             const SpatialGrid& grid, const PhysicalParams& p, int k_states);

// T_eff = 2 <K> / k_B
double effective_temperature(double kinetic, const PhysicalParams& p);

// Peak excitation of a harmonic oscillator whose center follows the pulse
// trajectory, from the running Fourier integral of the velocity:
//   N(t) = m / (2 hbar w) |w int_0^t v(t') e^{i w t'} dt'|^2,
// returned as max_t N(t). At the final time this reduces to the usual
// |FT of the acceleration|^2 transport-excitation formula (integration by
// parts); the running maximum is what the instantaneous-basis projection
// measures during transport.
double harmonic_heating_estimate(const ControlPulse& pulse, double omega,
                                 const PhysicalParams& p);

struct MetricsReport {
  double infidelity_max = 0.0;
  double infidelity_avg = 0.0;
  double infidelity_last = 0.0;
  double infidelity_std = 0.0;
  double max_mean_n = 0.0;
  double max_delta_n = 0.0;
  double max_t_eff_k = 0.0;
};

MetricsReport summarize(const EvolutionRecord& rec, const StageSchedule& sched,
                        const PhysicalParams& p);
std::string report_to_json(const MetricsReport& r);

}  // namespace tw::metrics
