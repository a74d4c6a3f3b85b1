#pragma once

#include <functional>

namespace nuggp {

struct NelderMeadResult {
  double argmin = 0.0;
  double value = 0.0;
  int n_evals = 0;
  bool converged = false;
};

/// One-dimensional Nelder-Mead simplex search. The initial simplex is
/// {init, init + step} with step = 0.1*|init| (0.1 when init is 0);
/// reflection 1.0, expansion 2.0, contraction/shrink 0.5. Stops when the
/// simplex function-value spread drops to 1.49e-8*(|best| + 1.49e-8) or
/// after 500 evaluations. Throws on a non-finite objective value.
NelderMeadResult nelder_mead_min(const std::function<double(double)>& objective,
                                 double init);

}  // namespace nuggp
