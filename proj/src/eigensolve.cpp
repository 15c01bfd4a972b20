#include "tweezer/eigensolve.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace tw {

Tridiagonal hamiltonian_tridiagonal(const SpatialGrid& grid, std::span<const double> potential,
                                    const PhysicalParams& p) {
  if (potential.size() != static_cast<std::size_t>(grid.n_points))
    throw std::invalid_argument("potential not sampled on the grid");
  const double t = hbar * hbar / (p.mass * grid.dx * grid.dx);
  Tridiagonal h;
  h.diag.resize(grid.n_points);
  h.off.assign(grid.n_points - 1, -0.5 * t);
  for (int i = 0; i < grid.n_points; ++i) h.diag[i] = t + potential[i];
  return h;
}

EigenResult lowest_eigenstates(const SpatialGrid& grid, std::span<const double> potential,
                               int k, const PhysicalParams& p) {
  const int n = grid.n_points;
  if (k < 1 || k > n) throw std::invalid_argument("eigenstate count out of range");
  Tridiagonal h = hamiltonian_tridiagonal(grid, potential, p);

  std::vector<double> w(n), z(static_cast<std::size_t>(n) * k);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(std::max(1, k)));
  lapack_int m_found = 0;
  lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, h.diag.data(), h.off.data(),
                                   0.0, 0.0, 1, k, 0.0, &m_found, w.data(), z.data(), n,
                                   isuppz.data());
  if (info != 0 || m_found != k)
    throw std::runtime_error("dstevr failed: info=" + std::to_string(info) +
                             " found=" + std::to_string(m_found) + " of " + std::to_string(k));

  EigenResult r;
  r.energies.assign(w.begin(), w.begin() + k);
  r.states.reserve(k);
  const double inv_sqrt_dx = 1.0 / std::sqrt(grid.dx);
  for (int j = 0; j < k; ++j) {
    WaveFunction psi;
    psi.grid = grid;
    psi.amp.resize(n);
    const double* col = z.data() + static_cast<std::size_t>(j) * n;
    int imax = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(col[i]) > std::abs(col[imax])) imax = i;
    const double sign = col[imax] < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) psi.amp[i] = sign * col[i] * inv_sqrt_dx;
    r.states.push_back(std::move(psi));
  }
  return r;
}

TrapCapacity trap_level_capacity(const SpatialGrid& grid, std::span<const double> potential,
                                 const PhysicalParams& p) {
  if (potential.size() != static_cast<std::size_t>(grid.n_points))
    throw std::invalid_argument("potential not sampled on the grid");
  TrapCapacity cap;
  const double edge = std::max(std::abs(potential.front()), std::abs(potential.back()));
  if (edge > 1e-3 * p.a_static) {
    cap.edge_contaminated = true;
    std::cerr << "trap_level_capacity: potential magnitude " << edge
              << " J at grid edge; capacity relative to V=0 is unreliable\n";
  }
  int imin = 0;
  for (int i = 1; i < grid.n_points; ++i)
    if (potential[i] < potential[imin]) imin = i;
  if (!(potential[imin] < 0.0)) return cap;  // no well below threshold
  cap.depth = -potential[imin];
  if (imin == 0 || imin == grid.n_points - 1) return cap;  // minimum on the wall
  const double curv =
      (potential[imin - 1] - 2.0 * potential[imin] + potential[imin + 1]) / (grid.dx * grid.dx);
  if (!(curv > 0.0)) return cap;
  cap.omega = std::sqrt(curv / p.mass);
  // count n >= 0 with (n + 1/2) hbar w < depth
  cap.levels = static_cast<int>(std::floor(cap.depth / (hbar * cap.omega) + 0.5));
  return cap;
}

}  // namespace tw
