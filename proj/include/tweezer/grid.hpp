#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tweezer/constants.hpp"
#include "tweezer/params.hpp"

namespace tw {

// Uniform spatial grid with FFT-ordered wavenumbers.
struct SpatialGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  int n_points = 0;
  double dx = 0.0;

  double x(int i) const { return x_min + dx * static_cast<double>(i); }

  std::vector<double> positions() const {
    std::vector<double> xs(n_points);
    for (int i = 0; i < n_points; ++i) xs[i] = x(i);
    return xs;
  }

  // Discrete-Fourier ordering: k_j = 2 pi j / (n dx) for j <= n/2, negative after.
  std::vector<double> wavenumbers() const {
    std::vector<double> k(n_points);
    const double dk = 2.0 * pi / (dx * static_cast<double>(n_points));
    for (int i = 0; i < n_points; ++i) {
      const int j = (i <= n_points / 2) ? i : i - n_points;
      k[i] = dk * static_cast<double>(j);
    }
    return k;
  }

  bool operator==(const SpatialGrid& o) const {
    return x_min == o.x_min && x_max == o.x_max && n_points == o.n_points;
  }
};

// Smallest integer >= n whose prime factors are all in {2,3,5,7}.
inline int next_fft_size(int n) {
  auto smooth = [](int v) {
    for (int f : {2, 3, 5, 7})
      while (v % f == 0) v /= f;
    return v == 1;
  };
  while (!smooth(n)) ++n;
  return n;
}

// Grid spanning [-padding, (n_st - 1) d + padding] with dx <= dx_target and an
// FFT-efficient point count.
inline SpatialGrid build_grid(const PhysicalParams& p, double padding, double dx_target,
                              std::size_t max_points = 1u << 22) {
  if (!(padding > 0.0)) throw std::invalid_argument("padding must be positive");
  if (!(dx_target > 0.0)) throw std::invalid_argument("dx_target must be positive");
  SpatialGrid g;
  g.x_min = -padding;
  g.x_max = static_cast<double>(p.n_static - 1) * p.separation + padding;
  const double span = g.x_max - g.x_min;
  int n = static_cast<int>(std::ceil(span / dx_target)) + 1;
  n = next_fft_size(std::max(n, 64));
  if (static_cast<std::size_t>(n) > max_points)
    throw std::invalid_argument("grid would exceed the configured memory cap");
  g.n_points = n;
  g.dx = span / static_cast<double>(n - 1);
  return g;
}

// Complex amplitudes on a grid, L2-normalized with the dx weight.
struct WaveFunction {
  std::vector<std::complex<double>> amp;
  SpatialGrid grid;

  double norm_sq() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return s * grid.dx;
  }

  void normalize() {
    const double n = std::sqrt(norm_sq());
    if (!(n > 0.0)) throw std::runtime_error("cannot normalize zero wave function");
    for (auto& a : amp) a /= n;
  }
};

// <a|b> dx; grids must match.
inline std::complex<double> overlap(const WaveFunction& a, const WaveFunction& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("wave functions live on different grids");
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < a.amp.size(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
  return s * a.grid.dx;
}

}  // namespace tw
