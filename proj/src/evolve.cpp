#include "tweezer/evolve.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>

#include "tweezer/kernels.hpp"
#include "tweezer/metrics.hpp"
#include "tweezer/potentials.hpp"

namespace tw {

namespace {
// The FFTW planner is not thread safe; plan creation/destruction is serialized.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

SplitStepEngine::SplitStepEngine(const SpatialGrid& grid) : grid_(grid) {
  buf_.resize(grid.n_points);
  auto* ptr = reinterpret_cast<fftw_complex*>(buf_.data());
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_fwd_ = fftw_plan_dft_1d(grid.n_points, ptr, ptr, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_1d(grid.n_points, ptr, ptr, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("fftw plan creation failed");
}

SplitStepEngine::~SplitStepEngine() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void SplitStepEngine::fft_forward() { fftw_execute(static_cast<fftw_plan>(plan_fwd_)); }
void SplitStepEngine::fft_backward() { fftw_execute(static_cast<fftw_plan>(plan_bwd_)); }

double SplitStepEngine::kinetic_expectation(const WaveFunction& psi, const PhysicalParams& p) {
  if (!(psi.grid == grid_)) throw std::invalid_argument("wave function grid mismatch");
  const int n = grid_.n_points;
  std::copy(psi.amp.begin(), psi.amp.end(), buf_.begin());
  fft_forward();
  const auto k = grid_.wavenumbers();
  std::vector<double> w(n);
  const double parseval = grid_.dx / static_cast<double>(n);
  for (int i = 0; i < n; ++i)
    w[i] = hbar * hbar * k[i] * k[i] / (2.0 * p.mass) * parseval;
  return kernels::weighted_abs2(buf_, w);
}

std::pair<WaveFunction, EvolutionRecord> SplitStepEngine::evolve(
    const WaveFunction& psi0, const ControlEvaluator& controls, const StageSchedule& sched,
    const EvolutionConfig& cfg, const PhysicalParams& p, const WaveFunction* target) {
  cfg.validate();
  if (!(psi0.grid == grid_)) throw std::invalid_argument("initial state grid mismatch");
  if (target && !(target->grid == grid_)) throw std::invalid_argument("target grid mismatch");
  const int n = grid_.n_points;
  const int nt = cfg.n_steps;
  const double dt = sched.total_time / static_cast<double>(nt);

  // Kinetic full-step phase with the inverse-transform 1/n folded in.
  std::vector<std::complex<double>> kin(n);
  {
    const auto k = grid_.wavenumbers();
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int i = 0; i < n; ++i) {
      const double ph = -hbar * k[i] * k[i] / (2.0 * p.mass) * dt;
      kin[i] = std::complex<double>(std::cos(ph), std::sin(ph)) * inv_n;
    }
  }

  const auto xs = grid_.positions();
  std::vector<double> v_static(n, 0.0);
  for (int w = 0; w < p.n_static; ++w)
    kernels::add_gaussian_well(v_static, xs, p.well_center(w), p.a_static, p.sigma_static);

  std::vector<double> v(n);
  auto potential_at = [&](int step) {
    const double t = dt * static_cast<double>(step);
    v = v_static;
    const double a = controls.amplitude(t);
    if (a > 0.0) kernels::add_gaussian_well(v, xs, controls.position(t), a, p.sigma_moving);
    else if (a < 0.0) throw NumericalError("negative control amplitude during evolution");
  };

  WaveFunction psi = psi0;
  EvolutionRecord rec;
  const double half = -0.5 * dt / hbar;
  const double full = -dt / hbar;

  auto record = [&](int step) {
    const double t = dt * static_cast<double>(step);
    const double nrm = kernels::norm_sq(psi.amp) * grid_.dx;
    if (std::abs(nrm - 1.0) > 1e-8) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "norm drifted to %.12f at t = %.6e s (step %d); refine dt or the grid",
                    nrm, t, step);
      throw NumericalError(msg);
    }
    rec.t.push_back(t);
    rec.norm.push_back(nrm);
    if (cfg.record_infidelity && target)
      rec.infidelity.push_back(metrics::infidelity(psi, *target));
    else
      rec.infidelity.push_back(std::numeric_limits<double>::quiet_NaN());
    if (cfg.record_kinetic)
      rec.kinetic.push_back(kinetic_expectation(psi, p));
    else
      rec.kinetic.push_back(std::numeric_limits<double>::quiet_NaN());
    double mn = std::numeric_limits<double>::quiet_NaN();
    double dn = std::numeric_limits<double>::quiet_NaN();
    if (cfg.record_occupation && step % cfg.occupation_stride == 0 && t >= sched.t1() &&
        t <= sched.t2() && controls.amplitude(t) > 0.0) {
      auto occ = metrics::moving_occupation(psi, t, controls, grid_, p, cfg.k_states);
      mn = occ.mean_n;
      dn = occ.delta_n;
    }
    rec.mean_n.push_back(mn);
    rec.delta_n.push_back(dn);
  };

  auto kinetic_step = [&]() {
    std::copy(psi.amp.begin(), psi.amp.end(), buf_.begin());
    fft_forward();
    kernels::pointwise_multiply(buf_, kin);
    fft_backward();
    std::copy(buf_.begin(), buf_.end(), psi.amp.begin());
  };

  if (cfg.scheme == Splitting::strang) {
    record(0);
    potential_at(0);
    kernels::phase_apply(psi.amp, v, half);
    for (int s = 1; s <= nt; ++s) {
      kinetic_step();
      potential_at(s);
      const bool at_record = (s % cfg.record_stride == 0) || s == nt;
      if (at_record) {
        kernels::phase_apply(psi.amp, v, half);
        record(s);
        if (s < nt) kernels::phase_apply(psi.amp, v, half);
      } else {
        kernels::phase_apply(psi.amp, v, full);
      }
    }
  } else {
    record(0);
    for (int s = 1; s <= nt; ++s) {
      kinetic_step();
      potential_at(s);
      kernels::phase_apply(psi.amp, v, full);
      if (s % cfg.record_stride == 0 || s == nt) record(s);
    }
  }
  return {std::move(psi), std::move(rec)};
}

std::pair<WaveFunction, EvolutionRecord> SplitStepEngine::evolve_static(
    const WaveFunction& psi0, std::span<const double> potential, double total_time,
    const EvolutionConfig& cfg, const PhysicalParams& p, const WaveFunction* target) {
  cfg.validate();
  if (!(psi0.grid == grid_)) throw std::invalid_argument("initial state grid mismatch");
  if (potential.size() != static_cast<std::size_t>(grid_.n_points))
    throw std::invalid_argument("potential not sampled on the grid");
  const int n = grid_.n_points;
  const int nt = cfg.n_steps;
  const double dt = total_time / static_cast<double>(nt);

  std::vector<std::complex<double>> kin(n), ph_half(n), ph_full(n);
  {
    const auto k = grid_.wavenumbers();
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int i = 0; i < n; ++i) {
      const double phk = -hbar * k[i] * k[i] / (2.0 * p.mass) * dt;
      kin[i] = std::complex<double>(std::cos(phk), std::sin(phk)) * inv_n;
      const double phv = -0.5 * dt / hbar * potential[i];
      ph_half[i] = std::complex<double>(std::cos(phv), std::sin(phv));
      ph_full[i] = ph_half[i] * ph_half[i];
    }
  }

  WaveFunction psi = psi0;
  EvolutionRecord rec;
  auto record = [&](int step) {
    const double t = dt * static_cast<double>(step);
    const double nrm = kernels::norm_sq(psi.amp) * grid_.dx;
    if (std::abs(nrm - 1.0) > 1e-8)
      throw NumericalError("norm drifted during static evolution");
    rec.t.push_back(t);
    rec.norm.push_back(nrm);
    rec.infidelity.push_back(target ? metrics::infidelity(psi, *target)
                                    : std::numeric_limits<double>::quiet_NaN());
    rec.kinetic.push_back(cfg.record_kinetic ? kinetic_expectation(psi, p)
                                             : std::numeric_limits<double>::quiet_NaN());
    rec.mean_n.push_back(std::numeric_limits<double>::quiet_NaN());
    rec.delta_n.push_back(std::numeric_limits<double>::quiet_NaN());
  };
  auto kinetic_step = [&]() {
    std::copy(psi.amp.begin(), psi.amp.end(), buf_.begin());
    fft_forward();
    kernels::pointwise_multiply(buf_, kin);
    fft_backward();
    std::copy(buf_.begin(), buf_.end(), psi.amp.begin());
  };

  record(0);
  if (cfg.scheme == Splitting::strang) {
    kernels::pointwise_multiply(psi.amp, ph_half);
    for (int s = 1; s <= nt; ++s) {
      kinetic_step();
      const bool at_record = (s % cfg.record_stride == 0) || s == nt;
      if (at_record) {
        kernels::pointwise_multiply(psi.amp, ph_half);
        record(s);
        if (s < nt) kernels::pointwise_multiply(psi.amp, ph_half);
      } else {
        kernels::pointwise_multiply(psi.amp, ph_full);
      }
    }
  } else {
    for (int s = 1; s <= nt; ++s) {
      kinetic_step();
      kernels::pointwise_multiply(psi.amp, ph_full);
      if (s % cfg.record_stride == 0 || s == nt) record(s);
    }
  }
  return {std::move(psi), std::move(rec)};
}

double kinetic_expectation(const WaveFunction& psi, const PhysicalParams& p) {
  SplitStepEngine engine(psi.grid);
  return engine.kinetic_expectation(psi, p);
}

std::string record_to_csv(const EvolutionRecord& r) {
  std::string out = "t_s,infidelity,mean_N,delta_N,kinetic_J,norm\n";
  char line[192];
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t[i],
                  r.infidelity[i], r.mean_n[i], r.delta_n[i], r.kinetic[i], r.norm[i]);
    out += line;
  }
  return out;
}

}  // namespace tw
