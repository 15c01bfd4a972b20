#include <doctest.h>

#include <cmath>
#include <random>

#include "tweezer/potentials.hpp"
#include "tweezer/units.hpp"

using namespace tw;

TEST_CASE("default parameters reproduce the reference setup") {
  PhysicalParams p;
  p.validate();
  CHECK(p.mass == doctest::Approx(6.47e-26));
  CHECK(units::depth_to_2pi_mhz(p.a_static) == doctest::Approx(0.53));
  CHECK(p.sigma_static == doctest::Approx(0.35e-6));
  CHECK(p.sigma_moving == doctest::Approx(0.47e-6));
  CHECK(p.separation == doctest::Approx(7e-6));
  CHECK(p.n_static == 2);
}

TEST_CASE("parameter validation rejects nonpositive values") {
  PhysicalParams p;
  p.sigma_static = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = PhysicalParams{};
  p.n_static = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("unit conversions round trip") {
  for (double v : {1e-30, 0.53, 3.57, 12.0}) {
    CHECK(units::depth_to_2pi_mhz(units::depth_from_2pi_mhz(v)) ==
          doctest::Approx(v).epsilon(1e-12));
  }
  CHECK(units::length_to_um(units::length_from_um(0.35)) == doctest::Approx(0.35).epsilon(1e-12));
  CHECK(units::time_to_ms(units::time_from_ms(2.5)) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("static potential values") {
  PhysicalParams p;
  SUBCASE("single well bottom") {
    p.n_static = 1;
    CHECK(static_potential(0.0, p) == doctest::Approx(-p.a_static).epsilon(1e-14));
  }
  SUBCASE("two wells, neighbor tail negligible") {
    CHECK(static_potential(p.separation, p) == doctest::Approx(-p.a_static).epsilon(1e-15));
  }
  SUBCASE("midpoint is exponentially shallow") {
    const double v = static_potential(p.separation / 2.0, p);
    CHECK(std::abs(v) < 1e-20 * p.a_static);
  }
}

TEST_CASE("static potential derivatives") {
  PhysicalParams p;
  p.n_static = 1;
  SUBCASE("well bottom") {
    auto [d1, d2] = static_potential_derivs(0.0, p);
    CHECK(d1 == doctest::Approx(0.0));
    CHECK(d2 == doctest::Approx(p.a_static / (p.sigma_static * p.sigma_static)));
  }
  SUBCASE("inflection point of the Gaussian") {
    auto [d1, d2] = static_potential_derivs(p.sigma_static, p);
    CHECK(d1 ==
          doctest::Approx(p.a_static / p.sigma_static * std::exp(-0.5)).epsilon(1e-12));
    CHECK(std::abs(d2) < 1e-10 * p.a_static / (p.sigma_static * p.sigma_static));
  }
  SUBCASE("finite differences agree at random points") {
    p.n_static = 2;
    std::mt19937_64 rng(7);
    const double h = 1e-4 * p.sigma_static;
    for (int i = 0; i < 100; ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const double x = -1e-6 + u * 9e-6;
      auto [d1, d2] = static_potential_derivs(x, p);
      const double fd1 = (static_potential(x + h, p) - static_potential(x - h, p)) / (2 * h);
      const double fd2 =
          (static_potential(x + h, p) - 2 * static_potential(x, p) + static_potential(x - h, p)) /
          (h * h);
      const double scale1 = std::max(std::abs(d1), p.a_static / p.sigma_static * 1e-4);
      const double scale2 = std::abs(p.a_static / (p.sigma_static * p.sigma_static));
      CHECK(std::abs(d1 - fd1) / scale1 < 1e-6);
      CHECK(std::abs(d2 - fd2) / scale2 < 1e-6);
    }
  }
}

TEST_CASE("static potential is even about an isolated well") {
  PhysicalParams p;
  p.n_static = 1;
  for (double frac : {0.1, 0.3, 0.5, 0.8, 1.0}) {
    const double delta = frac * p.sigma_static;
    CHECK(std::abs(static_potential(delta, p) - static_potential(-delta, p)) <
          1e-12 * p.a_static);
  }
}

TEST_CASE("moving potential") {
  PhysicalParams p;
  const double a = units::depth_from_2pi_mhz(3.57);
  CHECK(moving_potential(1e-6, 3e-6, 0.0, p) == 0.0);
  CHECK(moving_potential(3e-6, 3e-6, a, p) == doctest::Approx(-a));
  CHECK(moving_potential(3e-6 + p.sigma_moving, 3e-6, a, p) ==
        doctest::Approx(-a * std::exp(-0.5)));
  CHECK_THROWS_AS(moving_potential(0.0, 0.0, -1e-30, p), std::invalid_argument);
}

TEST_CASE("trap frequencies and characteristic times") {
  PhysicalParams p;
  SUBCASE("static period is about 0.030 ms") {
    CHECK(tau_static(p) == doctest::Approx(0.030e-3).epsilon(0.02));
  }
  SUBCASE("square root scaling") {
    PhysicalParams q = p;
    q.a_static *= 4.0;
    CHECK(omega_static(q) == doctest::Approx(2.0 * omega_static(p)).epsilon(1e-12));
    q = p;
    q.sigma_static *= 2.0;
    CHECK(omega_static(q) == doctest::Approx(0.5 * omega_static(p)).epsilon(1e-12));
  }
  SUBCASE("transport trap oscillates twice as fast") {
    const double a_exp = units::depth_from_2pi_mhz(3.57);
    CHECK(tau_moving(a_exp, p) / tau_static(p) == doctest::Approx(0.5).epsilon(0.05));
  }
  SUBCASE("zero depth gives zero frequency") {
    CHECK(omega_moving_max(0.0, p) == 0.0);
    CHECK_THROWS_AS(omega_moving_max(-1.0, p), std::invalid_argument);
  }
  SUBCASE("frequency ratio squared") {
    const double a_exp = units::depth_from_2pi_mhz(3.57);
    CHECK(omega_tilde_sq(a_exp, p) == doctest::Approx(3.74).epsilon(0.01));
  }
}
