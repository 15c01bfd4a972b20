#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tweezer/grid.hpp"
#include "tweezer/pulses.hpp"

namespace tw {

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Splitting { strang, single };

struct EvolutionConfig {
  int n_steps = 5000;
  Splitting scheme = Splitting::strang;
  int record_stride = 10;
  bool record_infidelity = true;
  bool record_kinetic = true;
  bool record_occupation = false;
  int occupation_stride = 50;  // in steps; must be a multiple of record_stride to land on records
  int k_states = 60;

  void validate() const {
    if (n_steps < 100) throw std::invalid_argument("n_steps must be >= 100");
    if (record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
    if (occupation_stride < 1) throw std::invalid_argument("occupation_stride must be >= 1");
    if (k_states < 1) throw std::invalid_argument("k_states must be >= 1");
  }
};

// Observable series sampled every record_stride steps (plus the final step).
// Occupation entries are NaN on records where the projection was not taken.
struct EvolutionRecord {
  std::vector<double> t;
  std::vector<double> infidelity;
  std::vector<double> mean_n;
  std::vector<double> delta_n;
  std::vector<double> kinetic;  // J
  std::vector<double> norm;
};

std::string record_to_csv(const EvolutionRecord& r);

// Split-step Fourier propagator over one grid; owns the FFT plans. A single
// evolution is strictly sequential; create one engine per concurrent job.
class SplitStepEngine {
 public:
  explicit SplitStepEngine(const SpatialGrid& grid);
  ~SplitStepEngine();
  SplitStepEngine(const SplitStepEngine&) = delete;
  SplitStepEngine& operator=(const SplitStepEngine&) = delete;

  // Evolve psi0 under V_st + V_mt(controls(t)) over [0, T]. The potential is
  // re-evaluated exactly at the step times t_n; Strang wraps consecutive half
  // steps into full ones between records without changing the product.
  std::pair<WaveFunction, EvolutionRecord> evolve(const WaveFunction& psi0,
                                                  const ControlEvaluator& controls,
                                                  const StageSchedule& sched,
                                                  const EvolutionConfig& cfg,
                                                  const PhysicalParams& p,
                                                  const WaveFunction* target = nullptr);

  // Time-independent potential, same stepping and recording; used by the
  // numerics battery and scheme-order tests.
  std::pair<WaveFunction, EvolutionRecord> evolve_static(const WaveFunction& psi0,
                                                         std::span<const double> potential,
                                                         double total_time,
                                                         const EvolutionConfig& cfg,
                                                         const PhysicalParams& p,
                                                         const WaveFunction* target = nullptr);

  // <p^2/2m> via the spectral representation.
  double kinetic_expectation(const WaveFunction& psi, const PhysicalParams& p);

  const SpatialGrid& grid() const { return grid_; }

 private:
  void fft_forward();
  void fft_backward();

  SpatialGrid grid_;
  std::vector<std::complex<double>> buf_;
  std::vector<double> kin_energy_;  // hbar^2 k^2 / 2m at unit mass scale filled per call
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
};

// Convenience wrapper: kinetic expectation with a scratch engine.
double kinetic_expectation(const WaveFunction& psi, const PhysicalParams& p);

}  // namespace tw
