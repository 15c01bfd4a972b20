#pragma once

#include <vector>

#include "tweezer/grid.hpp"
#include "tweezer/params.hpp"

namespace tw {

// Symmetric tridiagonal matrix in the usual (diagonal, subdiagonal) layout.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
};

// 3-point kinetic stencil plus sampled potential, implicit Dirichlet walls:
// diag_i = hbar^2/(m dx^2) + V_i, off_i = -hbar^2/(2 m dx^2).
Tridiagonal hamiltonian_tridiagonal(const SpatialGrid& grid, std::span<const double> potential,
                                    const PhysicalParams& p);

struct EigenResult {
  std::vector<double> energies;        // ascending, J
  std::vector<WaveFunction> states;    // real-valued, orthonormal, sign-fixed
};

// k lowest eigenpairs via LAPACK dstevr (deterministic). Eigenvectors are
// normalized with the dx weight and the max-magnitude sample is made positive
// so golden files stay stable.
EigenResult lowest_eigenstates(const SpatialGrid& grid, std::span<const double> potential,
                               int k, const PhysicalParams& p);

// Number of harmonic-oscillator levels hosted by the deepest well of the
// sampled potential: levels V_min + (n + 1/2) hbar w below the escape
// threshold V = 0, with w from the curvature at the minimum. This is the
// "oscillator level" capacity measure; the raw count of negative eigenvalues
// of a Gaussian well is substantially larger because the spacing shrinks
// toward threshold.
struct TrapCapacity {
  int levels = 0;
  double omega = 0.0;       // rad/s at the minimum
  double depth = 0.0;       // J, -V_min
  bool edge_contaminated = false;  // |V| at a grid edge above 1e-3 A_st
};
TrapCapacity trap_level_capacity(const SpatialGrid& grid, std::span<const double> potential,
                                 const PhysicalParams& p);

}  // namespace tw
