#pragma once

#include <vector>

#include "tweezer/params.hpp"

namespace tw {

struct DiscretizationFit {
  double a = 0.0, b = 0.0, c = 0.0;  // E = a dx^b / (1 + c dx), dx in um
  std::vector<double> dx_um;
  std::vector<double> error;      // measured RMS per dx
  std::vector<double> residuals;  // model - data
  double evaluate_um(double dx_um) const;
};

// Space-discretization error of the finite-difference eigensolver: RMS over
// grid points of the per-point probability difference between the computed
// harmonic-oscillator ground state (frequency omega_st) and the sampled
// Hermite-Gaussian, on the standard simulation span. Fits the three-parameter
// model by least squares on the error values.
DiscretizationFit discretization_error_study(std::span<const double> dx_values_m,
                                             const PhysicalParams& p);

double discretization_error_at(double dx_m, const PhysicalParams& p);

std::vector<double> default_dx_values();  // m

}  // namespace tw
