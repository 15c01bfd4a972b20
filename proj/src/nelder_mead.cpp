#include "tweezer/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tw {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const NelderMeadOptions& opts) {
  const std::size_t dim = x0.size();
  if (dim < 1) throw std::invalid_argument("nelder_mead needs dimension >= 1");
  if (!opts.init_step.empty() && opts.init_step.size() != dim)
    throw std::invalid_argument("init_step dimension mismatch");

  NelderMeadResult res;
  auto eval = [&](const std::vector<double>& x) {
    const double v = f(x);
    ++res.evaluations;
    if (res.history.empty() || v < res.history.back())
      res.history.push_back(v);
    else
      res.history.push_back(res.history.back());
    return v;
  };

  std::vector<std::vector<double>> simplex;
  simplex.reserve(dim + 1);
  simplex.push_back(x0);
  for (std::size_t j = 0; j < dim; ++j) {
    auto v = x0;
    const double step = opts.init_step.empty() ? (v[j] != 0.0 ? 0.05 * v[j] : 0.00025)
                                               : opts.init_step[j];
    v[j] += step;
    simplex.push_back(std::move(v));
  }
  std::vector<double> fx(dim + 1);
  for (std::size_t j = 0; j <= dim && res.evaluations < opts.max_evals; ++j)
    fx[j] = eval(simplex[j]);

  auto order = [&]() {
    std::vector<std::size_t> idx(dim + 1);
    std::iota(idx.begin(), idx.end(), 0u);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return fx[a] < fx[b];
    });
    std::vector<std::vector<double>> s2;
    std::vector<double> f2;
    s2.reserve(dim + 1);
    f2.reserve(dim + 1);
    for (auto i : idx) {
      s2.push_back(simplex[i]);
      f2.push_back(fx[i]);
    }
    simplex.swap(s2);
    fx.swap(f2);
  };

  while (res.evaluations < opts.max_evals) {
    order();
    if (fx[dim] - fx[0] < opts.convergence_tol) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[j][i];
    for (auto& c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double coef) {
      std::vector<double> x(dim);
      for (std::size_t i = 0; i < dim; ++i)
        x[i] = centroid[i] + coef * (centroid[i] - simplex[dim][i]);
      return x;
    };

    auto xr = blend(1.0);
    const double fr = eval(xr);
    if (fr < fx[0]) {
      if (res.evaluations >= opts.max_evals) { simplex[dim] = xr; fx[dim] = fr; break; }
      auto xe = blend(2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[dim] = std::move(xe);
        fx[dim] = fe;
      } else {
        simplex[dim] = std::move(xr);
        fx[dim] = fr;
      }
    } else if (fr < fx[dim - 1]) {
      simplex[dim] = std::move(xr);
      fx[dim] = fr;
    } else {
      if (res.evaluations >= opts.max_evals) break;
      auto xc = blend(-0.5);
      const double fc = eval(xc);
      if (fc < fx[dim]) {
        simplex[dim] = std::move(xc);
        fx[dim] = fc;
      } else {
        for (std::size_t j = 1; j <= dim && res.evaluations < opts.max_evals; ++j) {
          for (std::size_t i = 0; i < dim; ++i)
            simplex[j][i] = simplex[0][i] + 0.5 * (simplex[j][i] - simplex[0][i]);
          fx[j] = eval(simplex[j]);
        }
      }
    }
  }

  order();
  res.x_best = simplex[0];
  res.f_best = fx[0];
  return res;
}

}  // namespace tw
