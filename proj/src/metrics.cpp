#include "tweezer/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <json.hpp>

#include "tweezer/eigensolve.hpp"
#include "tweezer/kernels.hpp"

namespace tw::metrics {

double infidelity(const WaveFunction& psi, const WaveFunction& target) {
  const auto ov = overlap(psi, target);
  return 1.0 - std::norm(ov);
}

WaitingStats waiting_stage_stats(const EvolutionRecord& rec, const StageSchedule& sched) {
  const double t3 = sched.t3();
  WaitingStats w;
  double sum = 0.0, sum2 = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < rec.t.size(); ++i) {
    if (rec.t[i] < t3 - 1e-12 * sched.total_time) continue;
    const double v = rec.infidelity[i];
    if (std::isnan(v)) continue;
    w.max = count == 0 ? v : std::max(w.max, v);
    w.last = v;
    sum += v;
    sum2 += v * v;
    ++count;
  }
  if (count == 0) throw std::invalid_argument("record does not cover the waiting stage");
  w.avg = sum / static_cast<double>(count);
  w.stddev = std::sqrt(std::max(0.0, sum2 / static_cast<double>(count) - w.avg * w.avg));
  return w;
}

Occupation moving_occupation(const WaveFunction& psi, double t, const ControlEvaluator& controls,
                             const SpatialGrid& grid, const PhysicalParams& p, int k_states) {
  const double a = controls.amplitude(t);
  if (!(a > 0.0))
    throw std::invalid_argument("moving tweezer is off; occupation basis undefined");
  const double xc = controls.position(t);
  const auto xs = grid.positions();
  std::vector<double> v(grid.n_points, 0.0);
  kernels::add_gaussian_well(v, xs, xc, a, p.sigma_moving);

  const int k = std::min(k_states, grid.n_points - 2);
  auto eig = lowest_eigenstates(grid, v, k, p);

  Occupation occ;
  occ.populations.reserve(k);
  double psum = 0.0, nsum = 0.0, n2sum = 0.0;
  for (int j = 0; j < k; ++j) {
    if (eig.energies[j] >= 0.0) break;  // only bound states of the moving trap
    const double pj = std::norm(overlap(eig.states[j], psi));
    occ.populations.push_back(pj);
    psum += pj;
    nsum += pj * j;
    n2sum += pj * static_cast<double>(j) * j;
  }
  occ.leakage = 1.0 - psum;
  if (psum > 0.0) {
    occ.mean_n = nsum / psum;
    occ.delta_n = std::sqrt(std::max(0.0, n2sum / psum - occ.mean_n * occ.mean_n));
  }
  return occ;
}

double effective_temperature(double kinetic, const PhysicalParams&) {
  if (kinetic < 0.0) throw std::invalid_argument("kinetic energy must be >= 0");
  return 2.0 * kinetic / kb;
}

double harmonic_heating_estimate(const ControlPulse& pulse, double omega,
                                 const PhysicalParams& p) {
  const std::size_t n = pulse.times.size();
  if (n < 3) throw std::invalid_argument("pulse too short to differentiate");
  const double dt = pulse.dt();

  // central-difference velocity of the trap center
  std::vector<double> v(n);
  v[0] = (pulse.positions[1] - pulse.positions[0]) / dt;
  v[n - 1] = (pulse.positions[n - 1] - pulse.positions[n - 2]) / dt;
  for (std::size_t i = 1; i + 1 < n; ++i)
    v[i] = (pulse.positions[i + 1] - pulse.positions[i - 1]) / (2.0 * dt);

  // running trapezoid of v e^{i w t}; track the envelope maximum
  std::complex<double> acc = 0.0;
  double max_abs2 = 0.0;
  auto integrand = [&](std::size_t i) {
    const double ph = omega * pulse.times[i];
    return v[i] * std::complex<double>(std::cos(ph), std::sin(ph));
  };
  std::complex<double> prev = integrand(0);
  for (std::size_t i = 1; i < n; ++i) {
    const std::complex<double> cur = integrand(i);
    acc += 0.5 * (prev + cur) * dt;
    prev = cur;
    max_abs2 = std::max(max_abs2, std::norm(acc));
  }
  return p.mass * omega / (2.0 * hbar) * max_abs2;
}

MetricsReport summarize(const EvolutionRecord& rec, const StageSchedule& sched,
                        const PhysicalParams& p) {
  MetricsReport r;
  const auto w = waiting_stage_stats(rec, sched);
  r.infidelity_max = w.max;
  r.infidelity_avg = w.avg;
  r.infidelity_last = w.last;
  r.infidelity_std = w.stddev;
  for (std::size_t i = 0; i < rec.t.size(); ++i) {
    if (!std::isnan(rec.mean_n[i])) r.max_mean_n = std::max(r.max_mean_n, rec.mean_n[i]);
    if (!std::isnan(rec.delta_n[i])) r.max_delta_n = std::max(r.max_delta_n, rec.delta_n[i]);
    if (!std::isnan(rec.kinetic[i]))
      r.max_t_eff_k = std::max(r.max_t_eff_k, effective_temperature(rec.kinetic[i], p));
  }
  return r;
}

std::string report_to_json(const MetricsReport& r) {
  nlohmann::json j;
  j["infidelity_max"] = r.infidelity_max;
  j["infidelity_avg"] = r.infidelity_avg;
  j["infidelity_last"] = r.infidelity_last;
  j["infidelity_std"] = r.infidelity_std;
  j["max_mean_n"] = r.max_mean_n;
  j["max_delta_n"] = r.max_delta_n;
  j["max_t_eff_k"] = r.max_t_eff_k;
  return j.dump(2) + "\n";
}

}  // namespace tw::metrics
