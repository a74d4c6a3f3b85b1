#include "nuggp/optimize.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace nuggp {

namespace {
constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
constexpr double kRelTol = 1.49e-8;
constexpr int kMaxEvals = 500;
}  // namespace

NelderMeadResult nelder_mead_min(const std::function<double(double)>& objective,
                                 double init) {
  int n_evals = 0;
  auto eval = [&](double x) {
    const double f = objective(x);
    ++n_evals;
    if (!std::isfinite(f))
      throw std::runtime_error("nelder_mead_min: non-finite objective value");
    return f;
  };

  const double f_init = objective(init);
  if (!std::isfinite(f_init))
    throw std::invalid_argument("nelder_mead_min: objective not finite at init");
  ++n_evals;

  const double step = init == 0.0 ? 0.1 : 0.1 * std::fabs(init);
  double xb = init, fb = f_init;            // best vertex
  double xw = init + step, fw = eval(xw);   // worst vertex
  if (fw < fb) {
    std::swap(xb, xw);
    std::swap(fb, fw);
  }

  bool converged = false;
  while (n_evals < kMaxEvals) {
    if (fw - fb <= kRelTol * (std::fabs(fb) + kRelTol)) {
      // A near-tie across well-separated vertices can mean the simplex
      // straddles the minimum symmetrically; probe the midpoint before
      // declaring convergence.
      if (std::fabs(xw - xb) > 1e-8 * (std::fabs(xb) + 1e-8)) {
        const double xm = 0.5 * (xb + xw);
        const double fm = eval(xm);
        if (fm < fb) {
          xw = xb; fw = fb;
          xb = xm; fb = fm;
          continue;
        }
      }
      converged = true;
      break;
    }
    // In one dimension the centroid of the non-worst vertices is the best
    // vertex itself.
    const double xr = xb + kReflect * (xb - xw);
    const double fr = eval(xr);
    if (fr < fb) {
      const double xe = xb + kExpand * (xr - xb);
      const double fe = n_evals < kMaxEvals ? eval(xe) : fr;
      if (fe < fr) {
        xw = xb; fw = fb;
        xb = xe; fb = fe;
      } else {
        xw = xb; fw = fb;
        xb = xr; fb = fr;
      }
    } else {
      // Reflection did not beat the best vertex: contract (outside when the
      // reflected point at least beats the worst, inside otherwise).
      const bool outside = fr < fw;
      const double xc = outside ? xb + kContract * (xr - xb) : xb + kContract * (xw - xb);
      if (n_evals >= kMaxEvals) break;
      const double fc = eval(xc);
      if (fc < (outside ? fr : fw)) {
        if (fc < fb) {
          xw = xb; fw = fb;
          xb = xc; fb = fc;
        } else {
          xw = xc; fw = fc;
        }
      } else {
        // Shrink toward the best vertex.
        xw = xb + kShrink * (xw - xb);
        if (n_evals >= kMaxEvals) break;
        fw = eval(xw);
        if (fw < fb) {
          std::swap(xb, xw);
          std::swap(fb, fw);
        }
      }
    }
  }
  return {xb, fb, n_evals, converged};
}

}  // namespace nuggp
