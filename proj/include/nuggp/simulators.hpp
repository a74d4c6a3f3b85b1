#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "nuggp/types.hpp"

namespace nuggp {

/// sin(10 pi x)/(2x) + (x-1)^4; the sparse-data 1-d test function. x = 0 is a
/// pole and is rejected.
double gramacy1d(double x);

/// Cauchy (Student-t with 1 df) density with location mu and spread sigma.
double cauchy_pdf(double x, double mu, double sigma);

/// sin(x) - 0.02 * cauchy_pdf(x, 1.57, 0.05); smooth except for the narrow
/// spike, which breaks stationarity.
double cauchysine(double x);

/// x1 * exp(-x1^2 - x2^2).
double exp2d(double x1, double x2);

/// 10 sin(pi x1 x2) + 20 (x3 - 0.5)^2 + 10 x4 + 5 x5.
double friedman5(const VectorXd& x);

/// The two-bump profile exp(-(y-1)^2) + exp(-0.8(y+1)^2) - 0.05 sin(8(y+0.1)).
double w_profile(double y);

/// -w_profile(x1) * w_profile(x2).
double f2d(double x1, double x2);

/// "Deterministic" optimizer-based simulator: the value found by Nelder-Mead
/// minimization of x1 -> f2d(x1, x) started at x1 = x. Fully deterministic,
/// yet discontinuous where the start lands in different basins.
double fsim(double x);

/// Reference curve for fsim: the global minimum over x1 of f2d(x1, x), found
/// by a 2000-point grid over [-3,3] plus local refinement from the five best
/// grid points.
double true_fmin(double x);

/// base(x) + sd * z with z a standard-normal variate keyed to the bit pattern
/// of x: theoretically deterministic, statistically noise.
double seeded_noise_sim(const std::function<double(double)>& base, double x, double sd);

/// Returns bad(x) with probability p_bad (keyed deterministically to x),
/// otherwise good(x); mimics a solver that sometimes converges to a wrong
/// local solution.
double mixture_sim(const std::function<double(double)>& good,
                   const std::function<double(double)>& bad, double x,
                   double p_bad = 0.1);

/// Catalog entry for a simulator usable from the harness and CLI.
struct SimulatorSpec {
  std::string name;
  int dims = 1;
  std::vector<Bounds> domain;
  bool truth_available = true;
  std::string description;
  std::function<double(const VectorXd&)> eval;   // data-generating response
  std::function<double(const VectorXd&)> truth;  // reference curve (== eval unless noted)
};

const std::vector<SimulatorSpec>& simulator_catalog();

/// nullptr when the name is unknown.
const SimulatorSpec* find_simulator(std::string_view name);

}  // namespace nuggp
