#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "tweezer/params.hpp"

namespace tw {

// Sum of static Gaussian wells, V(x) = -A_st sum_n exp(-(x - x_n)^2 / (2 s^2)).
inline double static_potential(double x, const PhysicalParams& p) {
  const double s2 = p.sigma_static * p.sigma_static;
  double v = 0.0;
  for (int n = 0; n < p.n_static; ++n) {
    const double u = x - p.well_center(n);
    v -= p.a_static * std::exp(-u * u / (2.0 * s2));
  }
  return v;
}

// First and second derivative of the static potential.
inline std::pair<double, double> static_potential_derivs(double x, const PhysicalParams& p) {
  const double s2 = p.sigma_static * p.sigma_static;
  double d1 = 0.0, d2 = 0.0;
  for (int n = 0; n < p.n_static; ++n) {
    const double u = x - p.well_center(n);
    const double g = std::exp(-u * u / (2.0 * s2));
    d1 += p.a_static * u / s2 * g;
    d2 += p.a_static / s2 * (1.0 - u * u / s2) * g;
  }
  return {d1, d2};
}

inline double moving_potential(double x, double x_mt, double a_mt, const PhysicalParams& p) {
  if (a_mt < 0.0) throw std::invalid_argument("moving tweezer depth must be >= 0");
  const double u = x - x_mt;
  return -a_mt * std::exp(-u * u / (2.0 * p.sigma_moving * p.sigma_moving));
}

}  // namespace tw
