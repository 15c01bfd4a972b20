#include "tweezer/pulses.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace tw {

StageSchedule::StageSchedule(double T, double eta_frac) : total_time(T), eta(eta_frac) {
  if (!(T > 0.0)) throw std::invalid_argument("total time must be positive");
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0,1)");
}

namespace {
void check_window(double t, double tau) {
  if (t < -1e-15 * tau || t > tau * (1.0 + 1e-15))
    throw std::invalid_argument("trajectory time outside [0, tau]");
}
}  // namespace

double traj_linear(double d, double tau, double t) {
  check_window(t, tau);
  return d * t / tau;
}

double traj_quadratic(double d, double tau, double t) {
  check_window(t, tau);
  const double s = t / tau;
  if (s <= 0.5) return d * 2.0 * s * s;
  return d * (-2.0 * s * s + 4.0 * s - 1.0);
}

double traj_min_jerk(double d, double tau, double t) {
  check_window(t, tau);
  const double s = t / tau;
  return d * (10.0 * s * s * s - 15.0 * s * s * s * s + 6.0 * s * s * s * s * s);
}

double traj_hybrid(double d, double tau, double xi, double t) {
  check_window(t, tau);
  if (xi < 0.0 || xi > 1.0) throw std::invalid_argument("hybridicity must lie in [0,1]");
  if (xi >= 1.0) return traj_linear(d, tau, t);
  const double den = 8.0 + 7.0 * xi;
  const double d_mj = d * 8.0 * (1.0 - xi) / den;
  const double tau_mj = tau * (1.0 - xi);
  if (t <= (1.0 - xi) / 2.0 * tau) return traj_min_jerk(d_mj, tau_mj, t);
  if (t <= (1.0 + xi) / 2.0 * tau) return d * (15.0 / den * t / tau - 7.0 * (1.0 - xi) / (2.0 * den));
  return traj_min_jerk(d_mj, tau_mj, t - tau * xi) + d * 15.0 * xi / den;
}

double trajectory(const TrajectoryKind& kind, double d, double tau, double t) {
  switch (kind.type) {
    case Trajectory::linear: return traj_linear(d, tau, t);
    case Trajectory::quadratic: return traj_quadratic(d, tau, t);
    case Trajectory::min_jerk: return traj_min_jerk(d, tau, t);
    case Trajectory::hybrid: return traj_hybrid(d, tau, kind.xi, t);
  }
  throw std::logic_error("unknown trajectory");
}

double amplitude_schedule(double a_max, const StageSchedule& s, double t) {
  const double T = s.total_time;
  if (t <= 0.0 || t >= s.t3()) return 0.0;
  if (t <= s.t1()) return a_max * 3.0 / (1.0 - s.eta) * t / T;
  if (t <= s.t2()) return a_max;
  return a_max * ((2.0 + s.eta) / (1.0 - s.eta) - 3.0 / (1.0 - s.eta) * t / T);
}

double position_schedule(const TrajectoryKind& kind, const PhysicalParams& p,
                         const StageSchedule& s, double t) {
  if (t <= s.t1()) return 0.0;
  if (t >= s.t2()) return p.separation;
  return trajectory(kind, p.separation, s.transport_time(), t - s.t1());
}

void ControlPulse::validate(const PhysicalParams& p) const {
  const std::size_t n = times.size();
  if (n < 2 || positions.size() != n || amplitudes.size() != n)
    throw std::invalid_argument("control pulse arrays inconsistent");
  const double T = schedule.total_time;
  const double step = T / static_cast<double>(n - 1);
  if (std::abs(times.front()) > 1e-15 * T || std::abs(times.back() - T) > 1e-12 * T)
    throw std::invalid_argument("pulse times must span [0, T]");
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(times[i] - times[i - 1] - step) > 1e-9 * step)
      throw std::invalid_argument("pulse times must be uniform");
  if (std::abs(amplitudes.front()) > 1e-6 * p.a_static ||
      std::abs(amplitudes.back()) > 1e-6 * p.a_static)
    throw std::invalid_argument("amplitude must vanish at the protocol ends");
  if (std::abs(positions.front()) > 1e-9 ||
      std::abs(positions.back() - p.separation) > 1e-9)
    throw std::invalid_argument("positions must run from 0 to d");
  for (double a : amplitudes)
    if (a < 0.0) throw std::invalid_argument("amplitudes must be nonnegative");
}

std::size_t SampledControls::index_of(double t) const {
  const double step = pulse_->dt();
  const double r = t / step;
  const auto i = static_cast<std::size_t>(std::llround(r));
  if (i >= pulse_->times.size() || std::abs(r - static_cast<double>(i)) > 1e-6)
    throw std::invalid_argument("evaluation time does not lie on the pulse sample grid");
  return i;
}

ControlPulse sample_controls(const ControlEvaluator& ev, const PhysicalParams& p,
                             const StageSchedule& s, int n_samples, const std::string& label) {
  if (n_samples < 100) throw std::invalid_argument("need at least 100 samples");
  ControlPulse pulse;
  pulse.schedule = s;
  pulse.label = label;
  pulse.times.resize(n_samples);
  pulse.positions.resize(n_samples);
  pulse.amplitudes.resize(n_samples);
  const double step = s.total_time / static_cast<double>(n_samples - 1);
  for (int i = 0; i < n_samples; ++i) {
    const double t = step * static_cast<double>(i);
    pulse.times[i] = t;
    pulse.positions[i] = ev.position(t);
    pulse.amplitudes[i] = ev.amplitude(t);
  }
  pulse.validate(p);
  return pulse;
}

ControlPulse sample_pulse(const TrajectoryKind& kind, double a_max, const PhysicalParams& p,
                          const StageSchedule& s, int n_samples) {
  std::string label;
  switch (kind.type) {
    case Trajectory::linear: label = "linear"; break;
    case Trajectory::quadratic: label = "quadratic"; break;
    case Trajectory::min_jerk: label = "min_jerk"; break;
    case Trajectory::hybrid: label = "hybrid_" + std::to_string(kind.xi); break;
  }
  FamilyControls ev(kind, a_max, p, s);
  return sample_controls(ev, p, s, n_samples, label);
}

std::string pulse_to_csv(const ControlPulse& pulse) {
  std::string out = "t_s,x_m,A_J\n";
  char line[128];
  for (std::size_t i = 0; i < pulse.times.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", pulse.times[i], pulse.positions[i],
                  pulse.amplitudes[i]);
    out += line;
  }
  return out;
}

}  // namespace tw
