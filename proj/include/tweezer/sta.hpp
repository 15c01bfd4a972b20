#pragma once

#include <stdexcept>
#include <vector>

#include "tweezer/pulses.hpp"

namespace tw {

// Raised when the reverse-engineered effective trap turns over (w^2 <= 0) or
// the required depth goes negative; the construction is invalid for the given
// total time / depth combination.
struct StaConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
  double at_time = 0.0;
};

// Minimum-jerk kernel and derivatives, the interpolant used by both auxiliary
// functions.
double min_jerk_kernel(double s);
double min_jerk_kernel_d1(double s);
double min_jerk_kernel_d2(double s);

// Static-trap-aware STA control construction. The auxiliary trajectory alpha
// and scaling rho are picewise minimum-jerk interpolations whose first and
// second derivatives vanish at every stage edge; the effective frequency and
// classical trajectory follow from the invariant conditions, the tweezer
// position from the force balance and the depth from the curvature match.
class StaConstruction {
 public:
  StaConstruction(const PhysicalParams& p, double a_max_cr, const StageSchedule& s,
                  double omega0 = 0.0);  // omega0 <= 0 means omega_st

  double alpha(double t) const;
  double alpha_dd(double t) const;
  double rho(double t) const;      // carries the sqrt(omega0 / omega_st) scale
  double rho_dd(double t) const;
  double omega_sq(double t) const;  // independent of omega0
  double x0(double t) const;
  double solve_x_mt(double t) const;
  double amplitude_at(double x_mt, double t) const;

  // Closed-form approximations from the quadratic truncation of the statics.
  double approx_x_mt_at(double x0_val, double omega_sq_val) const;
  double approx_position(double t) const;  // staged: pinned to 0 / d outside transport

  double omega_tilde_sq() const { return wt2_; }
  double a_max_cr() const { return a_cr_; }
  double omega0() const { return w0_; }
  const StageSchedule& schedule() const { return sched_; }
  const PhysicalParams& params() const { return p_; }

 private:
  // r(t) = rho / sqrt(omega0/omega_st): 1 outside, (wt2+1)^(-1/4) on the plateau.
  double r_of(double t) const;
  double r_dd_of(double t) const;

  PhysicalParams p_;
  StageSchedule sched_;
  double a_cr_ = 0.0;
  double w0_ = 0.0;
  double wt2_ = 0.0;
  double w_st_ = 0.0;
  double r_plateau_ = 0.0;
};

class StaControls final : public ControlEvaluator {
 public:
  StaControls(StaConstruction c, bool use_approx) : c_(std::move(c)), approx_(use_approx) {}
  double position(double t) const override;
  double amplitude(double t) const override;
  const StaConstruction& construction() const { return c_; }

 private:
  StaConstruction c_;
  bool approx_;
};

struct StaPulse {
  ControlPulse pulse;
  std::vector<double> omega_sq;  // sampled with the pulse
  std::vector<double> x0;
  double omega_tilde_sq = 0.0;
  double a_max_cr = 0.0;
  double global_max_amplitude = 0.0;
};

StaPulse build_sta_pulse(const PhysicalParams& p, double a_max_cr, const StageSchedule& s,
                         int n_samples, double omega0 = 0.0);
StaPulse build_sta_approx_pulse(const PhysicalParams& p, double a_max_cr, const StageSchedule& s,
                                int n_samples, double omega0 = 0.0);

// a_cr + A_st (1 + 2 e^{-3/2}) sigma_mt^2 / sigma_st^2
double approx_max_amplitude(double a_max_cr, const PhysicalParams& p);

// Inverts approx_max_amplitude, then bisects on the sampled pulse maximum
// until the global maximum matches the target within 0.5%.
double calibrate_capture_depth(double target_global_max, const PhysicalParams& p,
                               double eta = 0.4);

}  // namespace tw
