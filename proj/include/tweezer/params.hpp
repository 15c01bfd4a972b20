#pragma once

#include <cmath>
#include <stdexcept>

#include "tweezer/constants.hpp"
#include "tweezer/units.hpp"

namespace tw {

// Trap geometry and atom parameters, SI. Immutable after construction.
struct PhysicalParams {
  double mass = 6.47e-26;                                    // kg, 39K
  double a_static = units::depth_from_2pi_mhz(0.53);         // J
  double sigma_static = 0.35e-6;                             // m
  int n_static = 2;                                          // wells at (n-1)*d
  double separation = 7.0e-6;                                // m
  double sigma_moving = 0.47e-6;                             // m

  void validate() const {
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
    if (!(a_static > 0.0)) throw std::invalid_argument("a_static must be positive");
    if (!(sigma_static > 0.0)) throw std::invalid_argument("sigma_static must be positive");
    if (!(sigma_moving > 0.0)) throw std::invalid_argument("sigma_moving must be positive");
    if (!(separation > 0.0)) throw std::invalid_argument("separation must be positive");
    if (n_static < 1) throw std::invalid_argument("n_static must be >= 1");
  }

  double well_center(int n) const { return static_cast<double>(n) * separation; }
};

inline double omega_static(const PhysicalParams& p) {
  return std::sqrt(p.a_static / (p.mass * p.sigma_static * p.sigma_static));
}

inline double tau_static(const PhysicalParams& p) { return 2.0 * pi / omega_static(p); }

inline double omega_moving_max(double a_max_cr, const PhysicalParams& p) {
  if (a_max_cr < 0.0) throw std::invalid_argument("a_max_cr must be >= 0");
  return std::sqrt(a_max_cr / (p.mass * p.sigma_moving * p.sigma_moving));
}

inline double tau_moving(double a_max_cr, const PhysicalParams& p) {
  return 2.0 * pi / omega_moving_max(a_max_cr, p);
}

// (omega_mt^max / omega_st)^2 = A_cr sigma_st^2 / (A_st sigma_mt^2)
inline double omega_tilde_sq(double a_max_cr, const PhysicalParams& p) {
  return a_max_cr * p.sigma_static * p.sigma_static /
         (p.a_static * p.sigma_moving * p.sigma_moving);
}

}  // namespace tw
