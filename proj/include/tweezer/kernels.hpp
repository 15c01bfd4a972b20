#pragma once

#include <complex>
#include <cstddef>
#include <span>

// Hot inner loops of the propagator, OpenMP-parallel with a serial reference
// implementation kept for testing (tools/bench compares the two).
//
// Pointwise kernels are element-independent, so the parallel and serial
// variants produce bit-identical results for any thread count. Reductions that
// feed recorded observables are serial on purpose: artifact bytes must not
// depend on the number of workers.
namespace tw::kernels {

// psi_i *= exp(i * scale * v_i)
void phase_apply(std::span<std::complex<double>> psi, std::span<const double> v, double scale);
void phase_apply_serial(std::span<std::complex<double>> psi, std::span<const double> v,
                        double scale);

// psi_i *= f_i
void pointwise_multiply(std::span<std::complex<double>> psi,
                        std::span<const std::complex<double>> f);
void pointwise_multiply_serial(std::span<std::complex<double>> psi,
                               std::span<const std::complex<double>> f);

// v_i += -depth * exp(-(x_i - center)^2 / (2 sigma^2))
void add_gaussian_well(std::span<double> v, std::span<const double> x, double center,
                       double depth, double sigma);
void add_gaussian_well_serial(std::span<double> v, std::span<const double> x, double center,
                              double depth, double sigma);

// Deterministic serial reductions.
double norm_sq(std::span<const std::complex<double>> psi);
std::complex<double> inner(std::span<const std::complex<double>> a,
                           std::span<const std::complex<double>> b);
double weighted_abs2(std::span<const std::complex<double>> f, std::span<const double> w);

int max_threads();

}  // namespace tw::kernels
