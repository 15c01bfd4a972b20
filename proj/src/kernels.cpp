#include "tweezer/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tw::kernels {

void phase_apply_serial(std::span<std::complex<double>> psi, std::span<const double> v,
                        double scale) {
  const std::size_t n = psi.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double ph = scale * v[i];
    psi[i] *= std::complex<double>(std::cos(ph), std::sin(ph));
  }
}

void phase_apply(std::span<std::complex<double>> psi, std::span<const double> v, double scale) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double ph = scale * v[i];
    psi[i] *= std::complex<double>(std::cos(ph), std::sin(ph));
  }
}

void pointwise_multiply_serial(std::span<std::complex<double>> psi,
                               std::span<const std::complex<double>> f) {
  const std::size_t n = psi.size();
  for (std::size_t i = 0; i < n; ++i) psi[i] *= f[i];
}

void pointwise_multiply(std::span<std::complex<double>> psi,
                        std::span<const std::complex<double>> f) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) psi[i] *= f[i];
}

void add_gaussian_well_serial(std::span<double> v, std::span<const double> x, double center,
                              double depth, double sigma) {
  const std::size_t n = v.size();
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = x[i] - center;
    v[i] -= depth * std::exp(-u * u * inv);
  }
}

void add_gaussian_well(std::span<double> v, std::span<const double> x, double center,
                       double depth, double sigma) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());
  const double inv = 1.0 / (2.0 * sigma * sigma);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double u = x[i] - center;
    v[i] -= depth * std::exp(-u * u * inv);
  }
}

double norm_sq(std::span<const std::complex<double>> psi) {
  double s = 0.0;
  for (const auto& a : psi) s += std::norm(a);
  return s;
}

std::complex<double> inner(std::span<const std::complex<double>> a,
                           std::span<const std::complex<double>> b) {
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double weighted_abs2(std::span<const std::complex<double>> f, std::span<const double> w) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * std::norm(f[i]);
  return s;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace tw::kernels
