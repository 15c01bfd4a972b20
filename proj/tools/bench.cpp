// Timing comparison of the OpenMP kernels against the serial reference, plus
// full propagation throughput on the default grid.
#include <chrono>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include <functional>
#include <cmath>

#include "tweezer/evolve.hpp"
#include "tweezer/grid.hpp"
#include "tweezer/kernels.hpp"
#include "tweezer/orchestrator.hpp"
#include "tweezer/pulses.hpp"

using clock_type = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  fn();  // warm up
  const auto t0 = clock_type::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = clock_type::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
  std::printf("threads: %d\n\n", tw::kernels::max_threads());
  std::printf("%-22s %10s %12s %12s %8s\n", "kernel", "n", "serial[ms]", "omp[ms]", "speedup");

  std::mt19937_64 rng(42);
  for (int n : {1 << 10, 1 << 14, 1 << 18, 1 << 20}) {
    std::vector<std::complex<double>> psi(n), f(n);
    std::vector<double> v(n), x(n);
    for (int i = 0; i < n; ++i) {
      psi[i] = {std::ldexp(static_cast<double>(rng() >> 11), -53), 0.3};
      f[i] = {0.99, 0.01};
      v[i] = std::ldexp(static_cast<double>(rng() >> 11), -53);
      x[i] = 1e-6 * i / n;
    }
    const int reps = std::max(1, (1 << 22) / n);

    auto a = psi;
    const double s1 = time_ms([&] { tw::kernels::phase_apply_serial(a, v, 1e-3); }, reps);
    const double p1 = time_ms([&] { tw::kernels::phase_apply(a, v, 1e-3); }, reps);
    std::printf("%-22s %10d %12.4f %12.4f %7.2fx\n", "phase_apply", n, s1, p1, s1 / p1);

    const double s2 = time_ms([&] { tw::kernels::pointwise_multiply_serial(a, f); }, reps);
    const double p2 = time_ms([&] { tw::kernels::pointwise_multiply(a, f); }, reps);
    std::printf("%-22s %10d %12.4f %12.4f %7.2fx\n", "pointwise_multiply", n, s2, p2, s2 / p2);

    const double s3 =
        time_ms([&] { tw::kernels::add_gaussian_well_serial(v, x, 5e-7, 1e-28, 1e-7); }, reps);
    const double p3 =
        time_ms([&] { tw::kernels::add_gaussian_well(v, x, 5e-7, 1e-28, 1e-7); }, reps);
    std::printf("%-22s %10d %12.4f %12.4f %7.2fx\n", "add_gaussian_well", n, s3, p3, s3 / p3);
  }

  std::printf("\nfull propagation (default grid, strang):\n");
  tw::PhysicalParams p;
  const auto grid = tw::build_grid(p, 2e-6, 0.02e-6);
  const tw::StageSchedule sched(1e-3, 0.4);
  tw::TrajectoryKind kind{tw::Trajectory::min_jerk, 0.0};
  tw::FamilyControls controls(kind, tw::units::depth_from_2pi_mhz(3.57), p, sched);
  tw::EvolutionConfig cfg;
  cfg.record_kinetic = false;

  std::vector<double> v(grid.n_points);
  tw::WaveFunction psi0;
  psi0.grid = grid;
  psi0.amp.resize(grid.n_points);
  const double l = std::sqrt(tw::hbar / (p.mass * tw::omega_static(p)));
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    psi0.amp[i] = std::exp(-x * x / (2.0 * l * l));
  }
  psi0.normalize();

  tw::SplitStepEngine engine(grid);
  const auto t0 = clock_type::now();
  auto [psi, rec] = engine.evolve(psi0, controls, sched, cfg, p);
  const auto t1 = clock_type::now();
  const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  std::printf("n=%d steps=%d: %.1f ms (%.1f us/step)\n", grid.n_points, cfg.n_steps, ms,
              1e3 * ms / cfg.n_steps);
  return 0;
}
