#include <doctest.h>

#include <cmath>

#include "tweezer/discretization.hpp"
#include "tweezer/eigensolve.hpp"
#include "tweezer/grid.hpp"
#include "tweezer/units.hpp"

using namespace tw;

namespace {

std::vector<double> harmonic_potential(const SpatialGrid& g, const PhysicalParams& p, double w) {
  std::vector<double> v(g.n_points);
  for (int i = 0; i < g.n_points; ++i) {
    const double x = g.x(i);
    v[i] = 0.5 * p.mass * w * w * x * x;
  }
  return v;
}

std::vector<double> gaussian_well(const SpatialGrid& g, double center, double depth,
                                  double sigma) {
  std::vector<double> v(g.n_points);
  for (int i = 0; i < g.n_points; ++i) {
    const double u = g.x(i) - center;
    v[i] = -depth * std::exp(-u * u / (2.0 * sigma * sigma));
  }
  return v;
}

}  // namespace

TEST_CASE("build_grid") {
  PhysicalParams p;
  SUBCASE("default span and point count") {
    const auto g = build_grid(p, 2e-6, 0.02e-6);
    CHECK(g.x_min == doctest::Approx(-2e-6));
    CHECK(g.x_max == doctest::Approx(9e-6));
    CHECK(g.n_points >= 551);
    CHECK(g.dx <= 0.02e-6 * (1 + 1e-12));
    // 7-smooth size
    int n = g.n_points;
    for (int f : {2, 3, 5, 7})
      while (n % f == 0) n /= f;
    CHECK(n == 1);
  }
  SUBCASE("invalid dx rejected") {
    CHECK_THROWS_AS(build_grid(p, 2e-6, 0.0), std::invalid_argument);
  }
  SUBCASE("single well span") {
    PhysicalParams q = p;
    q.n_static = 1;
    const auto g = build_grid(q, 2e-6, 0.02e-6);
    CHECK(g.x_max - g.x_min == doctest::Approx(4e-6));
  }
  SUBCASE("memory cap") {
    CHECK_THROWS_AS(build_grid(p, 2e-6, 1e-12, 1u << 16), std::invalid_argument);
  }
  SUBCASE("wavenumber ordering") {
    const auto g = build_grid(p, 2e-6, 0.02e-6);
    const auto k = g.wavenumbers();
    CHECK(k[0] == 0.0);
    CHECK(k[1] == doctest::Approx(2.0 * pi / (g.dx * g.n_points)));
    CHECK(k[g.n_points - 1] == doctest::Approx(-k[1]));
    double kmax = 0.0;
    for (double v : k) kmax = std::max(kmax, std::abs(v));
    CHECK(kmax <= pi / g.dx * (1 + 1e-12));
  }
}

TEST_CASE("tridiagonal Hamiltonian structure") {
  PhysicalParams p;
  SpatialGrid g{0.0, 1e-6, 101, 1e-8};
  std::vector<double> v(101, 0.0);
  const auto h = hamiltonian_tridiagonal(g, v, p);
  const double t = hbar * hbar / (p.mass * g.dx * g.dx);
  CHECK(h.diag[0] == doctest::Approx(t));
  CHECK(h.diag[50] == doctest::Approx(t));
  CHECK(h.off[0] == doctest::Approx(-0.5 * t));

  SUBCASE("free-particle eigenvalues match the Dirichlet Toeplitz closed form") {
    auto eig = lowest_eigenstates(g, v, 5, p);
    const int n = g.n_points;
    for (int j = 0; j < 5; ++j) {
      const double s = std::sin(0.5 * pi * (j + 1) / (n + 1));
      const double exact = 2.0 * hbar * hbar / (p.mass * g.dx * g.dx) * s * s;
      CHECK(eig.energies[j] == doctest::Approx(exact).epsilon(1e-10));
    }
  }
}

TEST_CASE("harmonic oscillator eigenpairs") {
  PhysicalParams p;
  p.n_static = 1;
  const auto g = build_grid(p, 2e-6, 0.02e-6);
  const double w = omega_static(p);
  const auto v = harmonic_potential(g, p, w);
  auto eig = lowest_eigenstates(g, v, 4, p);

  SUBCASE("ladder energies") {
    CHECK(eig.energies[0] == doctest::Approx(0.5 * hbar * w).epsilon(1e-3));
    for (int n = 1; n < 4; ++n)
      CHECK(eig.energies[n] == doctest::Approx((n + 0.5) * hbar * w).epsilon(2e-3));
  }
  SUBCASE("orthonormality") {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const double ov = std::abs(overlap(eig.states[i], eig.states[j]));
        if (i == j)
          CHECK(ov == doctest::Approx(1.0).epsilon(1e-10));
        else
          CHECK(ov < 1e-8);
      }
  }
  SUBCASE("deterministic across repeated solves") {
    auto eig2 = lowest_eigenstates(g, v, 4, p);
    for (int n = 0; n < 4; ++n)
      CHECK(std::abs(eig.energies[n] - eig2.energies[n]) < 1e-10 * hbar * w);
  }
  SUBCASE("refinement reduces the ground-energy error by at least 3x") {
    const auto g2 = build_grid(p, 2e-6, 0.01e-6);
    auto eig2 = lowest_eigenstates(g2, harmonic_potential(g2, p, w), 1, p);
    const double e1 = std::abs(eig.energies[0] - 0.5 * hbar * w);
    const double e2 = std::abs(eig2.energies[0] - 0.5 * hbar * w);
    CHECK(e1 / e2 > 3.0);
  }
}

TEST_CASE("single static well ground state is even") {
  PhysicalParams p;
  p.n_static = 1;
  const auto g = build_grid(p, 2e-6, 0.02e-6);
  const auto v = gaussian_well(g, 0.0, p.a_static, p.sigma_static);
  auto eig = lowest_eigenstates(g, v, 1, p);
  // skew statistic of |psi|^2 about the well center
  double skew = 0.0, norm = 0.0;
  for (int i = 0; i < g.n_points; ++i) {
    const double x = g.x(i);
    const double w = std::norm(eig.states[0].amp[i]) * g.dx;
    skew += w * x * x * x;
    norm += w;
  }
  const double l = std::sqrt(hbar / (p.mass * omega_static(p)));
  CHECK(std::abs(skew / norm) / (l * l * l) < 1e-8);
}

TEST_CASE("negative-energy count among the lowest k states at transport depth") {
  PhysicalParams p;
  const auto g = build_grid(p, 2e-6, 0.02e-6);
  auto v = gaussian_well(g, 0.0, units::depth_from_2pi_mhz(3.57), p.sigma_moving);
  const auto vst = gaussian_well(g, 0.0, p.a_static, p.sigma_static);
  const auto vst2 = gaussian_well(g, p.separation, p.a_static, p.sigma_static);
  for (int i = 0; i < g.n_points; ++i) v[i] += vst[i] + vst2[i];
  auto eig = lowest_eigenstates(g, v, 60, p);
  int negative = 0;
  for (double e : eig.energies)
    if (e < 0.0) ++negative;
  CHECK(negative >= 49);
  CHECK(negative <= 61);
}

TEST_CASE("trap level capacity") {
  PhysicalParams p;
  const auto g = build_grid(p, 2e-6, 0.02e-6);
  SUBCASE("flat potential hosts nothing") {
    std::vector<double> v(g.n_points, 0.0);
    CHECK(trap_level_capacity(g, v, p).levels == 0);
  }
  SUBCASE("deep Gaussian approximates depth over spacing") {
    const double depth = units::depth_from_2pi_mhz(3.57);
    const auto v = gaussian_well(g, 3.5e-6, depth, p.sigma_moving);
    const auto cap = trap_level_capacity(g, v, p);
    const double harmonic = depth / (hbar * omega_moving_max(depth, p));
    CHECK(std::abs(cap.levels - harmonic) / harmonic < 0.15);
    CHECK_FALSE(cap.edge_contaminated);
  }
  SUBCASE("transport-depth moving plus static well hosts about 55 levels") {
    auto v = gaussian_well(g, 0.0, units::depth_from_2pi_mhz(3.57), p.sigma_moving);
    const auto vst = gaussian_well(g, 0.0, p.a_static, p.sigma_static);
    const auto vst2 = gaussian_well(g, p.separation, p.a_static, p.sigma_static);
    for (int i = 0; i < g.n_points; ++i) v[i] += vst[i] + vst2[i];
    const auto cap = trap_level_capacity(g, v, p);
    CHECK(cap.levels >= 49);
    CHECK(cap.levels <= 61);
  }
  SUBCASE("edge contamination is flagged") {
    const auto v = gaussian_well(g, g.x_min, p.a_static, p.sigma_static);
    CHECK(trap_level_capacity(g, v, p).edge_contaminated);
  }
}

TEST_CASE("discretization error study") {
  PhysicalParams p;
  const auto dxs = default_dx_values();
  REQUIRE(dxs.size() >= 6);
  const auto fit = discretization_error_study(dxs, p);

  SUBCASE("error is monotone over the studied range") {
    CHECK(std::is_sorted(fit.error.begin(), fit.error.end()));
  }
  SUBCASE("fitted exponent near the quadratic stencil order") {
    CHECK(fit.b >= 1.8);
    CHECK(fit.b <= 2.8);
  }
  SUBCASE("error at the default step sits in the expected decade") {
    const double e = discretization_error_at(0.02e-6, p);
    CHECK(e >= 1e-5);
    CHECK(e <= 1e-4);
  }
  SUBCASE("narrow ranges are rejected") {
    std::vector<double> narrow = {0.01e-6, 0.012e-6, 0.014e-6, 0.016e-6, 0.018e-6, 0.02e-6};
    CHECK_THROWS_AS(discretization_error_study(narrow, p), std::invalid_argument);
  }
}
