#include <doctest.h>

#include <cmath>

#include "tweezer/potentials.hpp"
#include "tweezer/sta.hpp"
#include "tweezer/units.hpp"

using namespace tw;

namespace {
const double a_exp = units::depth_from_2pi_mhz(3.57);
}

TEST_CASE("auxiliary trajectory alpha") {
  PhysicalParams p;
  const StageSchedule s(1e-3, 0.4);
  StaConstruction c(p, a_exp, s);
  CHECK(c.alpha(s.t1()) == doctest::Approx(0.0));
  CHECK(c.alpha(s.t2()) == doctest::Approx(p.separation));
  CHECK(c.alpha(0.5 * (s.t1() + s.t2())) == doctest::Approx(p.separation / 2));
  SUBCASE("kernel derivatives vanish exactly at both ends") {
    CHECK(min_jerk_kernel_d1(0.0) == 0.0);
    CHECK(min_jerk_kernel_d1(1.0) == 0.0);
    CHECK(min_jerk_kernel_d2(0.0) == 0.0);
    CHECK(min_jerk_kernel_d2(1.0) == 0.0);
  }
  SUBCASE("second derivative vanishes at every stage edge") {
    for (double edge : {0.0, s.t1(), s.t2(), s.t3(), s.total_time})
      CHECK(c.alpha_dd(edge) == 0.0);
  }
  SUBCASE("analytic second derivative matches finite differences inside transport") {
    const double h = 1e-6 * s.total_time;
    const double scale = p.separation / (s.transport_time() * s.transport_time());
    for (double frac : {0.2, 0.35, 0.6, 0.8}) {
      const double t = s.t1() + frac * (s.t2() - s.t1());
      const double fd2 = (c.alpha(t + h) - 2 * c.alpha(t) + c.alpha(t - h)) / (h * h);
      CHECK(std::abs(c.alpha_dd(t) - fd2) < 1e-4 * scale);
    }
  }
}

TEST_CASE("auxiliary scaling rho") {
  PhysicalParams p;
  const StageSchedule s(1e-3, 0.4);
  StaConstruction c(p, a_exp, s);
  const double plateau = std::pow(omega_tilde_sq(a_exp, p) + 1.0, -0.25);
  SUBCASE("plateau value") {
    CHECK(plateau == doctest::Approx(0.678).epsilon(2e-3));
    CHECK(c.rho(0.5 * (s.t1() + s.t2())) == doctest::Approx(plateau).epsilon(1e-12));
  }
  SUBCASE("unit value outside the active window") {
    CHECK(c.rho(0.0) == doctest::Approx(1.0));
    CHECK(c.rho(s.t3()) == doctest::Approx(1.0));
    CHECK(c.rho(s.total_time) == doctest::Approx(1.0));
  }
  SUBCASE("second derivative vanishes at every stage edge") {
    for (double edge : {0.0, s.t1(), s.t2(), s.t3(), s.total_time})
      CHECK(c.rho_dd(edge) == 0.0);
  }
  SUBCASE("first differences vanish at the stage edges") {
    const double h = 1e-7 * s.total_time;
    for (double edge : {s.t1(), s.t2(), s.t3()}) {
      const double d1 = (c.rho(edge + h) - c.rho(edge - h)) / (2 * h);
      // rho is dimensionless and order one; its interior slope scale is 1/t1
      CHECK(std::abs(d1) * s.t1() < 1e-8);
    }
  }
}

TEST_CASE("effective frequency") {
  PhysicalParams p;
  const StageSchedule s(1e-3, 0.4);
  StaConstruction c(p, a_exp, s);
  const double w_st = omega_static(p);
  SUBCASE("static value outside the active window") {
    CHECK(c.omega_sq(0.0) == doctest::Approx(w_st * w_st).epsilon(1e-12));
    CHECK(c.omega_sq(0.95 * s.total_time) == doctest::Approx(w_st * w_st).epsilon(1e-12));
  }
  SUBCASE("transport plateau equals the combined trap curvature") {
    const double w_mt = omega_moving_max(a_exp, p);
    CHECK(c.omega_sq(0.5 * (s.t1() + s.t2())) ==
          doctest::Approx(w_st * w_st + w_mt * w_mt).epsilon(1e-10));
  }
  SUBCASE("omega0 invariance of the construction outputs") {
    StaConstruction c2(p, a_exp, s, 2.0 * omega_static(p));
    for (double frac : {0.05, 0.15, 0.35, 0.5, 0.75, 0.9}) {
      const double t = frac * s.total_time;
      CHECK(c.omega_sq(t) == doctest::Approx(c2.omega_sq(t)).epsilon(1e-10));
      CHECK(c.solve_x_mt(t) == doctest::Approx(c2.solve_x_mt(t)).epsilon(1e-10));
      CHECK(c.amplitude_at(c.solve_x_mt(t), t) ==
            doctest::Approx(c2.amplitude_at(c2.solve_x_mt(t), t)).epsilon(1e-10));
    }
    // rho itself carries the sqrt(omega0) scale
    CHECK(c2.rho(0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("classical trajectory x0") {
  PhysicalParams p;
  const StageSchedule s(1e-3, 0.4);
  StaConstruction c(p, a_exp, s);
  CHECK(c.x0(0.5 * s.t1()) == doctest::Approx(0.0));
  CHECK(c.x0(0.99 * s.total_time) == doctest::Approx(p.separation));
  CHECK(c.x0(0.5 * (s.t1() + s.t2())) == doctest::Approx(p.separation / 2).epsilon(1e-10));
}

TEST_CASE("force-balance root solve") {
  PhysicalParams p;
  const StageSchedule s(1e-3, 0.4);
  StaConstruction c(p, a_exp, s);
  SUBCASE("well centers solve trivially") {
    CHECK(c.solve_x_mt(0.0) == doctest::Approx(0.0));
    CHECK(c.solve_x_mt(s.total_time) == doctest::Approx(p.separation).epsilon(1e-12));
  }
  SUBCASE("solved position satisfies the balance to tolerance") {
    for (double frac : {0.25, 0.4, 0.5, 0.6, 0.75}) {
      const double t = s.t1() + frac * (s.t2() - s.t1());
      const double x = c.solve_x_mt(t);
      const double residual =
          x - static_potential_derivs(x, p).first / (p.mass * c.omega_sq(t)) - c.x0(t);
      CHECK(std::abs(residual) < 1e-12 * p.separation);
    }
  }
}

TEST_CASE("amplitude from the curvature match") {
  PhysicalParams p;
  const StageSchedule s(1e-3, 0.4);
  StaConstruction c(p, a_exp, s);
  SUBCASE("zero at the protocol start") {
    CHECK(c.amplitude_at(0.0, 0.0) <= 1e-6 * p.a_static);
  }
  SUBCASE("transport plateau exceeds the bare harmonic value between the wells") {
    const double t = s.t1() + 0.21 * (s.t2() - s.t1());
    const double x = c.solve_x_mt(t);
    const double bare = p.sigma_moving * p.sigma_moving * p.mass * c.omega_sq(t);
    if (static_potential_derivs(x, p).second < 0.0) CHECK(c.amplitude_at(x, t) > bare);
  }
  SUBCASE("mid-transport value where the static curvature vanishes") {
    const double t = 0.5 * (s.t1() + s.t2());
    const double x = c.solve_x_mt(t);
    const double expected = p.sigma_moving * p.sigma_moving * p.mass * c.omega_sq(t);
    CHECK(c.amplitude_at(x, t) == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("full STA pulse") {
  PhysicalParams p;
  const StageSchedule s(1e-3, 0.4);
  auto sta = build_sta_pulse(p, a_exp, s, 5001);
  SUBCASE("pulse invariants hold") { sta.pulse.validate(p); }
  SUBCASE("maximum exceeds the capture depth by the counteraction offset") {
    CHECK(sta.global_max_amplitude > a_exp);
    CHECK(units::depth_to_2pi_mhz(sta.global_max_amplitude) == doctest::Approx(4.95).epsilon(0.01));
  }
  SUBCASE("position stays within 1% of the bare minimum-jerk path") {
    const TrajectoryKind mj{Trajectory::min_jerk, 0.0};
    double worst = 0.0;
    for (std::size_t i = 0; i < sta.pulse.times.size(); ++i) {
      const double t = sta.pulse.times[i];
      if (t <= s.t1() || t >= s.t2()) continue;
      const double ref = position_schedule(mj, p, s, t);
      worst = std::max(worst, std::abs(sta.pulse.positions[i] - ref));
    }
    CHECK(worst < 0.01 * p.separation);
  }
  SUBCASE("omega0 leaves the sampled controls unchanged") {
    auto sta2 = build_sta_pulse(p, a_exp, s, 5001, 2.0 * omega_static(p));
    double worst_x = 0.0, worst_a = 0.0;
    for (std::size_t i = 0; i < sta.pulse.times.size(); ++i) {
      worst_x = std::max(worst_x, std::abs(sta.pulse.positions[i] - sta2.pulse.positions[i]));
      worst_a = std::max(worst_a, std::abs(sta.pulse.amplitudes[i] - sta2.pulse.amplitudes[i]));
    }
    CHECK(worst_x <= 1e-10 * p.separation);
    CHECK(worst_a <= 1e-10 * sta.global_max_amplitude);
  }
}

TEST_CASE("trap inversion is reported for too-fast schedules") {
  PhysicalParams p;
  const StageSchedule s(0.02e-3, 0.4);
  CHECK_THROWS_AS(build_sta_pulse(p, a_exp, s, 501), StaConstructionError);
}

TEST_CASE("closed-form approximation") {
  PhysicalParams p;
  const StageSchedule s(1e-3, 0.4);
  StaConstruction c(p, a_exp, s);
  SUBCASE("reduces to x0 when the statics vanish") {
    PhysicalParams q = p;
    q.a_static = 1e-60;  // effectively off while staying positive
    StaConstruction c0(q, a_exp, s);
    const double t = 0.5 * (s.t1() + s.t2());
    CHECK(c0.approx_x_mt_at(3e-6, c0.omega_sq(t)) == doctest::Approx(3e-6).epsilon(1e-9));
  }
  SUBCASE("midpoint is a fixed point") {
    const double t = 0.5 * (s.t1() + s.t2());
    CHECK(c.approx_x_mt_at(p.separation / 2, c.omega_sq(t)) ==
          doctest::Approx(p.separation / 2).epsilon(1e-12));
  }
  SUBCASE("approximate amplitude within 4% of the numerical one during transport") {
    auto full = build_sta_pulse(p, a_exp, s, 5001);
    auto approx = build_sta_approx_pulse(p, a_exp, s, 5001);
    double worst = 0.0;
    for (std::size_t i = 0; i < full.pulse.times.size(); ++i) {
      const double t = full.pulse.times[i];
      if (t <= s.t1() || t >= s.t2()) continue;
      worst = std::max(worst, std::abs(approx.pulse.amplitudes[i] - full.pulse.amplitudes[i]) /
                                  full.pulse.amplitudes[i]);
    }
    CHECK(worst < 0.04);
  }
  SUBCASE("quadratic-truncation corrections stay small at the defaults") {
    // the three correction coefficients of the transport-window closed form,
    // at eta T = 1 ms and the transport-plateau frequency
    const StageSchedule s_tr(2.5e-3, 0.4);
    StaConstruction ctr(p, a_exp, s_tr);
    const double w2 = ctr.omega_sq(0.5 * (s_tr.t1() + s_tr.t2()));
    const double tau = 1e-3;
    const double c1 = 60.0 / (tau * tau * w2) / p.separation * p.separation;  // alpha-dd scale
    const double c2 = 4.0 * p.a_static / (p.separation * p.separation * p.mass * w2);
    const double c3 = 8.0 * p.a_static / (p.separation * p.separation * p.mass * w2);
    CHECK(std::abs(c1) < 5e-3);
    CHECK(std::abs(c2) < 5e-3);
    CHECK(std::abs(c3) < 5e-3);
  }
}

TEST_CASE("approximate maximum amplitude") {
  PhysicalParams p;
  CHECK(units::depth_to_2pi_mhz(approx_max_amplitude(a_exp, p)) ==
        doctest::Approx(4.95).epsilon(0.002));
  PhysicalParams q = p;
  q.a_static = 1e-62;
  CHECK(approx_max_amplitude(a_exp, q) == doctest::Approx(a_exp));
  SUBCASE("matches the sampled maximum within 3%") {
    const StageSchedule s(1e-3, 0.4);
    auto sta = build_sta_pulse(p, a_exp, s, 5001);
    CHECK(approx_max_amplitude(a_exp, p) ==
          doctest::Approx(sta.global_max_amplitude).epsilon(0.03));
  }
}

TEST_CASE("capture-depth calibration") {
  PhysicalParams p;
  SUBCASE("inverse pair") {
    const double target = approx_max_amplitude(a_exp, p);
    const double a = calibrate_capture_depth(target, p);
    CHECK(a == doctest::Approx(a_exp).epsilon(0.01));
  }
  SUBCASE("experimentally quoted maximum inverts to about 2.19") {
    const double a = calibrate_capture_depth(a_exp, p);
    CHECK(units::depth_to_2pi_mhz(a) == doctest::Approx(2.19).epsilon(0.02));
  }
  SUBCASE("refined pulse maximum lands within half a percent") {
    const double a = calibrate_capture_depth(a_exp, p);
    const StageSchedule s(1e-3, 0.4);
    auto sta = build_sta_pulse(p, a, s, 5001);
    CHECK(sta.global_max_amplitude == doctest::Approx(a_exp).epsilon(0.005));
  }
  SUBCASE("targets below the offset are rejected") {
    CHECK_THROWS_AS(calibrate_capture_depth(0.5 * approx_max_amplitude(0.0, p), p),
                    std::invalid_argument);
  }
}

TEST_CASE("harmonic limit: statics off reproduces the bare oscillator controls") {
  PhysicalParams p;
  p.a_static = 1e-62;
  const StageSchedule s(1e-3, 0.4);
  StaConstruction c(p, a_exp, s);
  for (double frac : {0.3, 0.5, 0.7}) {
    const double t = s.t1() + frac * (s.t2() - s.t1());
    const double x = c.solve_x_mt(t);
    CHECK(x == doctest::Approx(c.x0(t)).epsilon(1e-10));
    CHECK(c.amplitude_at(x, t) ==
          doctest::Approx(p.sigma_moving * p.sigma_moving * p.mass * c.omega_sq(t))
              .epsilon(1e-10));
  }
}
