#pragma once

#include <functional>
#include <vector>

namespace tw {

struct NelderMeadOptions {
  int max_evals = 400;
  double convergence_tol = 1e-7;        // stop when the simplex objective spread drops below
  std::vector<double> init_step;        // per-dimension initial simplex offsets
};

struct NelderMeadResult {
  std::vector<double> x_best;
  double f_best = 0.0;
  int evaluations = 0;
  std::vector<double> history;  // best-so-far after each evaluation
};

// Classic simplex search with reflection 1, expansion 2, contraction 0.5 and
// shrink 0.5. Deterministic given x0, the options and the objective.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const NelderMeadOptions& opts);

}  // namespace tw
