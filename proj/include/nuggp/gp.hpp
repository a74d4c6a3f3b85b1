#pragma once

#include <optional>

#include "nuggp/chol.hpp"
#include "nuggp/kernels.hpp"

namespace nuggp {

/// Student-t predictive over a set of test locations. loc/scale are in
/// standardized response units; y_mean/y_sd de-standardize them.
struct PredictiveDist {
  double df = 0.0;
  VectorXd loc;                         // predictive means
  VectorXd scale;                       // per-point t scale^2, >= 0
  std::optional<MatrixXd> joint_scale;  // full scale matrix when requested
  bool includes_noise = false;
  double y_mean = 0.0;
  double y_sd = 1.0;
};

/// Per-point central credible interval in original response units.
struct Interval {
  VectorXd lo;
  VectorXd hi;
};

struct MarginalResult {
  double value = 0.0;
  double jitter_used = 0.0;
};

/// Integrated log marginal likelihood log p(y | d, g): the zero-mean Gaussian
/// likelihood with covariance sigma^2*K integrated against an
/// InverseGamma(a, b) prior on sigma^2,
///   a log b + lgamma(a + n/2) - lgamma(a) - (n/2) log(2 pi)
///     - log|K|/2 - (a + n/2) log(b + y'K^{-1}y / 2).
/// Solves go through the jittered Cholesky; factorization failures propagate.
MarginalResult log_marginal_detail(const Dataset& data, const Hyperparams& hp, double a,
                                   double b);
double log_marginal(const Dataset& data, const Hyperparams& hp, double a, double b);

/// Student-t kriging prediction with df = 2a + n. include_noise adds the
/// nugget to the test-point variance (a new realization rather than the
/// latent surface); want_joint fills joint_scale over the whole test set.
PredictiveDist predict(const Dataset& data, const Hyperparams& hp, const MatrixXd& Xstar,
                       double a, double b, bool include_noise, bool want_joint);

/// Central equal-tailed Student-t interval at the given level, reported in
/// original response units.
Interval credible_bounds(const PredictiveDist& pd, double level);

}  // namespace nuggp
