#include "tweezer/discretization.hpp"

#include <cmath>
#include <stdexcept>

#include "tweezer/eigensolve.hpp"
#include "tweezer/grid.hpp"
#include "tweezer/nelder_mead.hpp"

namespace tw {

double DiscretizationFit::evaluate_um(double dx_um) const {
  return a * std::pow(dx_um, b) / (1.0 + c * dx_um);
}

double discretization_error_at(double dx_m, const PhysicalParams& p) {
  const double w = omega_static(p);
  const double l = std::sqrt(hbar / (p.mass * w));
  const double x_min = -2e-6;
  const double x_max = static_cast<double>(p.n_static - 1) * p.separation + 2e-6;
  int n = static_cast<int>(std::ceil((x_max - x_min) / dx_m)) + 1;
  n = std::max(n, 16);
  SpatialGrid g{x_min, x_max, n, (x_max - x_min) / static_cast<double>(n - 1)};

  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    const double x = g.x(i);
    v[i] = 0.5 * p.mass * w * w * x * x;
  }
  auto eig = lowest_eigenstates(g, v, 1, p);

  // both states in the unit-sum per-point convention
  std::vector<double> exact(n);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = g.x(i);
    exact[i] = std::exp(-x * x / (2.0 * l * l));
    s += exact[i] * exact[i];
  }
  const double inv = 1.0 / std::sqrt(s);
  double sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double pn = std::norm(eig.states[0].amp[i]) * g.dx;
    const double pe = exact[i] * inv * exact[i] * inv;
    sum2 += (pn - pe) * (pn - pe);
  }
  return std::sqrt(sum2 / static_cast<double>(n));
}

std::vector<double> default_dx_values() {
  // log-spaced over [0.009, 0.16] um; past ~0.17 um the coarse-grid ground
  // state degenerates and the error is no longer monotone
  std::vector<double> out;
  const double lo = 0.009, hi = 0.16;
  const int n = 9;
  for (int i = 0; i < n; ++i)
    out.push_back(1e-6 * lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

DiscretizationFit discretization_error_study(std::span<const double> dx_values_m,
                                             const PhysicalParams& p) {
  if (dx_values_m.size() < 6)
    throw std::invalid_argument("need at least 6 dx values");
  double lo = dx_values_m[0], hi = dx_values_m[0];
  for (double v : dx_values_m) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi < 10.0 * lo) throw std::invalid_argument("dx values must span at least a decade");

  DiscretizationFit fit;
  for (double dx : dx_values_m) {
    fit.dx_um.push_back(dx * 1e6);
    fit.error.push_back(discretization_error_at(dx, p));
  }

  const auto& X = fit.dx_um;
  const auto& E = fit.error;
  auto sse = [&](const std::vector<double>& q) {
    const double a = q[0], b = q[1], c = q[2];
    if (a <= 0.0 || b <= 0.0 || c < 0.0) return 1e18;
    double s = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
      const double m = a * std::pow(X[i], b) / (1.0 + c * X[i]);
      s += (m - E[i]) * (m - E[i]);
    }
    return s;
  };

  double best = 1e300;
  std::vector<double> best_q;
  for (double b0 : {1.5, 2.0, 2.31, 2.8, 3.2}) {
    for (double c0 : {0.5, 7.0, 30.0}) {
      for (double a0 : {0.1, 0.5, 2.0, 10.0}) {
        NelderMeadOptions opts;
        opts.max_evals = 20000;
        opts.convergence_tol = 1e-22;
        opts.init_step = {0.1 * a0, 0.2, 0.5 * c0 + 0.1};
        auto r = nelder_mead(sse, {a0, b0, c0}, opts);
        if (r.f_best < best) {
          best = r.f_best;
          best_q = r.x_best;
        }
      }
    }
  }
  if (best_q.empty() || !std::isfinite(best) || best >= 1e18)
    throw std::runtime_error("discretization fit failed (singular design)");
  fit.a = best_q[0];
  fit.b = best_q[1];
  fit.c = best_q[2];
  for (std::size_t i = 0; i < X.size(); ++i)
    fit.residuals.push_back(fit.evaluate_um(X[i]) - E[i]);
  return fit;
}

}  // namespace tw
