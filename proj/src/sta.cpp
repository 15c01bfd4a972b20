#include "tweezer/sta.hpp"

#include <algorithm>
#include <cmath>

#include "tweezer/potentials.hpp"

namespace tw {

double min_jerk_kernel(double s) {
  return 10.0 * s * s * s - 15.0 * s * s * s * s + 6.0 * s * s * s * s * s;
}
double min_jerk_kernel_d1(double s) {
  return 30.0 * s * s - 60.0 * s * s * s + 30.0 * s * s * s * s;
}
double min_jerk_kernel_d2(double s) { return 60.0 * s - 180.0 * s * s + 120.0 * s * s * s; }

StaConstruction::StaConstruction(const PhysicalParams& p, double a_max_cr,
                                 const StageSchedule& s, double omega0)
    : p_(p), sched_(s), a_cr_(a_max_cr) {
  if (!(a_max_cr > 0.0)) throw std::invalid_argument("a_max_cr must be positive");
  w_st_ = omega_static(p);
  w0_ = omega0 > 0.0 ? omega0 : w_st_;
  wt2_ = omega_tilde_sq(a_max_cr, p);
  r_plateau_ = std::pow(wt2_ + 1.0, -0.25);
}

double StaConstruction::alpha(double t) const {
  if (t <= sched_.t1()) return 0.0;
  if (t >= sched_.t2()) return p_.separation;
  const double s = (t - sched_.t1()) / sched_.transport_time();
  return p_.separation * min_jerk_kernel(s);
}

double StaConstruction::alpha_dd(double t) const {
  if (t <= sched_.t1() || t >= sched_.t2()) return 0.0;
  const double tau = sched_.transport_time();
  const double s = (t - sched_.t1()) / tau;
  return p_.separation * min_jerk_kernel_d2(s) / (tau * tau);
}

double StaConstruction::r_of(double t) const {
  const double tc = sched_.t1();  // capture and release stages share this length
  if (t <= 0.0) return 1.0;
  if (t < sched_.t1()) return 1.0 + (r_plateau_ - 1.0) * min_jerk_kernel(t / tc);
  if (t <= sched_.t2()) return r_plateau_;
  if (t < sched_.t3())
    return r_plateau_ - (r_plateau_ - 1.0) * min_jerk_kernel((t - sched_.t2()) / tc);
  return 1.0;
}

double StaConstruction::r_dd_of(double t) const {
  const double tc = sched_.t1();
  if (t > 0.0 && t < sched_.t1())
    return (r_plateau_ - 1.0) * min_jerk_kernel_d2(t / tc) / (tc * tc);
  if (t > sched_.t2() && t < sched_.t3())
    return -(r_plateau_ - 1.0) * min_jerk_kernel_d2((t - sched_.t2()) / tc) / (tc * tc);
  return 0.0;
}

double StaConstruction::rho(double t) const { return std::sqrt(w0_ / w_st_) * r_of(t); }
double StaConstruction::rho_dd(double t) const { return std::sqrt(w0_ / w_st_) * r_dd_of(t); }

double StaConstruction::omega_sq(double t) const {
  // w^2 = w0^2 / rho^4 - rho'' / rho; the sqrt(w0/w_st) scale cancels w0.
  const double r = r_of(t);
  const double w2 = w_st_ * w_st_ / (r * r * r * r) - r_dd_of(t) / r;
  if (!(w2 > 0.0)) {
    StaConstructionError err("effective trap frequency turned over (omega^2 <= 0) at t = " +
                             std::to_string(t) + " s");
    err.at_time = t;
    throw err;
  }
  return w2;
}

double StaConstruction::x0(double t) const { return alpha_dd(t) / omega_sq(t) + alpha(t); }

double StaConstruction::solve_x_mt(double t) const {
  const double w2 = omega_sq(t);
  const double x0v = x0(t);
  const double mw2 = p_.mass * w2;
  const double d = p_.separation;
  auto g = [&](double x) { return x - static_potential_derivs(x, p_).first / mw2 - x0v; };

  double lo = x0v - p_.sigma_static, hi = x0v + p_.sigma_static;
  double glo = g(lo), ghi = g(hi);
  if (glo * ghi > 0.0) {
    lo = x0v - 2.0 * p_.sigma_static;
    hi = x0v + 2.0 * p_.sigma_static;
    glo = g(lo);
    ghi = g(hi);
    if (glo * ghi > 0.0) {
      StaConstructionError err("no tweezer position solves the force balance at t = " +
                               std::to_string(t) + " s (bracket [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "] m)");
      err.at_time = t;
      throw err;
    }
  }

  // Safeguarded Newton from x0; the nearest root is the physical one.
  double x = x0v;
  for (int it = 0; it < 200; ++it) {
    const double gx = g(x);
    if (std::abs(gx) < 1e-12 * d) return x;
    if (gx * glo < 0.0) {
      hi = x;
    } else {
      lo = x;
      glo = gx;
    }
    const double gp = 1.0 - static_potential_derivs(x, p_).second / mw2;
    double next = (gp != 0.0) ? x - gx / gp : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  StaConstructionError err("force-balance root solve did not converge at t = " +
                           std::to_string(t) + " s");
  err.at_time = t;
  throw err;
}

double StaConstruction::amplitude_at(double x_mt, double t) const {
  const double w2 = omega_sq(t);
  const double d2v = static_potential_derivs(x_mt, p_).second;
  const double s2 = p_.sigma_moving * p_.sigma_moving;
  double a = s2 * (p_.mass * w2 - d2v);
  if (a < -1e-9 * p_.a_static) {
    StaConstructionError err("required tweezer depth is negative (" + std::to_string(a) +
                             " J) at t = " + std::to_string(t) + " s");
    err.at_time = t;
    throw err;
  }
  return std::max(a, 0.0);
}

double StaConstruction::approx_x_mt_at(double x0_val, double omega_sq_val) const {
  const double d = p_.separation;
  const double mw2 = p_.mass * omega_sq_val;
  return (x0_val + 4.0 * p_.a_static / (d * mw2)) / (1.0 + 8.0 * p_.a_static / (d * d * mw2));
}

double StaConstruction::approx_position(double t) const {
  // The quadratic truncation only holds between the wells; outside the
  // transport window the tweezer is pinned to the endpoints.
  if (t <= sched_.t1()) return 0.0;
  if (t >= sched_.t2()) return p_.separation;
  return approx_x_mt_at(x0(t), omega_sq(t));
}

double StaControls::position(double t) const {
  return approx_ ? c_.approx_position(t) : c_.solve_x_mt(t);
}

double StaControls::amplitude(double t) const { return c_.amplitude_at(position(t), t); }

namespace {
StaPulse build_impl(const PhysicalParams& p, double a_max_cr, const StageSchedule& s,
                    int n_samples, double omega0, bool approx) {
  StaConstruction c(p, a_max_cr, s, omega0);
  StaControls ev(c, approx);
  StaPulse out;
  out.pulse = sample_controls(ev, p, s, n_samples, approx ? "sta_approx" : "sta");
  out.omega_sq.resize(n_samples);
  out.x0.resize(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const double t = out.pulse.times[i];
    out.omega_sq[i] = ev.construction().omega_sq(t);
    out.x0[i] = ev.construction().x0(t);
  }
  out.omega_tilde_sq = ev.construction().omega_tilde_sq();
  out.a_max_cr = a_max_cr;
  out.global_max_amplitude =
      *std::max_element(out.pulse.amplitudes.begin(), out.pulse.amplitudes.end());
  return out;
}
}  // namespace

StaPulse build_sta_pulse(const PhysicalParams& p, double a_max_cr, const StageSchedule& s,
                         int n_samples, double omega0) {
  return build_impl(p, a_max_cr, s, n_samples, omega0, false);
}

StaPulse build_sta_approx_pulse(const PhysicalParams& p, double a_max_cr,
                                const StageSchedule& s, int n_samples, double omega0) {
  return build_impl(p, a_max_cr, s, n_samples, omega0, true);
}

double approx_max_amplitude(double a_max_cr, const PhysicalParams& p) {
  if (a_max_cr < 0.0) throw std::invalid_argument("a_max_cr must be >= 0");
  const double ratio = p.sigma_moving * p.sigma_moving / (p.sigma_static * p.sigma_static);
  return a_max_cr + p.a_static * (1.0 + 2.0 * std::exp(-1.5)) * ratio;
}

double calibrate_capture_depth(double target_global_max, const PhysicalParams& p, double eta) {
  const double offset = approx_max_amplitude(0.0, p);
  if (!(target_global_max > offset))
    throw std::invalid_argument("target amplitude below the static counteraction offset");
  const double guess = target_global_max - offset;

  // The plateau maximum is set by the trap geometry, not by T; any convenient
  // schedule works for the refinement.
  const StageSchedule s(1e-3, eta);
  auto sampled_max = [&](double a) {
    return build_sta_pulse(p, a, s, 2001).global_max_amplitude;
  };
  double lo = 0.5 * guess, hi = 1.5 * guess;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double mx = sampled_max(mid);
    if (std::abs(mx - target_global_max) <= 5e-3 * target_global_max) return mid;
    (mx > target_global_max ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace tw
