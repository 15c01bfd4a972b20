#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tweezer/params.hpp"

namespace tw {

// Four-stage protocol timing: capture / transport / release / wait.
// Stage edges at (1-eta)T/3, (1+2 eta)T/3, (2+eta)T/3, T.
struct StageSchedule {
  double total_time = 0.0;  // s
  double eta = 0.4;

  StageSchedule() = default;
  StageSchedule(double T, double eta_frac);

  double t1() const { return (1.0 - eta) / 3.0 * total_time; }  // capture -> transport
  double t2() const { return (1.0 + 2.0 * eta) / 3.0 * total_time; }  // transport -> release
  double t3() const { return (2.0 + eta) / 3.0 * total_time; }  // release -> wait
  double transport_time() const { return eta * total_time; }
};

enum class Trajectory { linear, quadratic, min_jerk, hybrid };

struct TrajectoryKind {
  Trajectory type = Trajectory::min_jerk;
  double xi = 0.0;  // hybridicity, only meaningful for hybrid
};

// Bare transport trajectories on [0, tau], displacement d.
double traj_linear(double d, double tau, double t);
double traj_quadratic(double d, double tau, double t);
double traj_min_jerk(double d, double tau, double t);
double traj_hybrid(double d, double tau, double xi, double t);
double trajectory(const TrajectoryKind& kind, double d, double tau, double t);

// Piece-wise linear depth ramp: rise / plateau / fall / off.
double amplitude_schedule(double a_max, const StageSchedule& s, double t);

// Staged position: 0 / trajectory / d / d.
double position_schedule(const TrajectoryKind& kind, const PhysicalParams& p,
                         const StageSchedule& s, double t);

// Control pair evaluated exactly at arbitrary times; the propagator consumes
// this instead of interpolating samples.
class ControlEvaluator {
 public:
  virtual ~ControlEvaluator() = default;
  virtual double position(double t) const = 0;
  virtual double amplitude(double t) const = 0;
};

class FamilyControls final : public ControlEvaluator {
 public:
  FamilyControls(TrajectoryKind kind, double a_max, PhysicalParams p, StageSchedule s)
      : kind_(kind), a_max_(a_max), p_(p), sched_(s) {}
  double position(double t) const override { return position_schedule(kind_, p_, sched_, t); }
  double amplitude(double t) const override { return amplitude_schedule(a_max_, sched_, t); }

 private:
  TrajectoryKind kind_;
  double a_max_;
  PhysicalParams p_;
  StageSchedule sched_;
};

// Uniformly sampled control pair. Invariants enforced at construction:
// amplitudes zero at both ends and nonnegative, positions from 0 to d.
struct ControlPulse {
  std::vector<double> times;       // s, uniform, [0, T]
  std::vector<double> positions;   // m
  std::vector<double> amplitudes;  // J
  StageSchedule schedule;
  std::string label;

  void validate(const PhysicalParams& p) const;
  double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

// Exact sample lookup; times must line up with the requested evaluation grid.
class SampledControls final : public ControlEvaluator {
 public:
  explicit SampledControls(const ControlPulse& pulse) : pulse_(&pulse) {}
  double position(double t) const override { return pulse_->positions[index_of(t)]; }
  double amplitude(double t) const override { return pulse_->amplitudes[index_of(t)]; }

 private:
  std::size_t index_of(double t) const;
  const ControlPulse* pulse_;
};

ControlPulse sample_pulse(const TrajectoryKind& kind, double a_max, const PhysicalParams& p,
                          const StageSchedule& s, int n_samples);
ControlPulse sample_controls(const ControlEvaluator& ev, const PhysicalParams& p,
                             const StageSchedule& s, int n_samples, const std::string& label);

std::string pulse_to_csv(const ControlPulse& pulse);

}  // namespace tw
