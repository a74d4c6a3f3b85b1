#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nuggp/gp.hpp"
#include "nuggp/rng.hpp"

namespace nuggp {

/// Hyperpriors: independent Gammas on each range denominator and on the
/// nugget, InverseGamma(a, b) on sigma^2. fix_g_zero selects the no-nugget
/// model (g pinned at exactly 0, its prior term dropped).
struct PriorSpec {
  double d_shape = 1.5;
  double d_rate = 1.5;
  double g_shape = 1.0;
  double g_rate = 10.0;
  double a = 1.5;
  double b = 1.5;
  bool fix_g_zero = false;

  void validate() const;
};

/// Sum of the Gamma log densities over the d entries (a single term under
/// isotropy) plus the g term. g = 0 without fix_g_zero is -inf: the boundary
/// is excluded under a continuous prior.
double log_prior(const Hyperparams& hp, const PriorSpec& prior);

struct McmcSettings {
  int n_iter = 6000;
  int burn = 1000;
  int thin = 10;
  double proposal_sd = 0.5;
};

struct ChainSample {
  VectorXd d;
  double g = 0.0;
  double log_post = 0.0;
  double jitter = 0.0;  // jitter this state's factorization needed
};

/// Stored posterior samples plus acceptance bookkeeping.
struct Chain {
  std::vector<ChainSample> samples;
  double accept_d = 0.0;
  double accept_g = 0.0;
  std::uint64_t seed = 0;
  bool isotropic = false;
  Index m = 0;
  PriorSpec prior;        // bundled so prediction has (a, b)
  McmcSettings settings;

  Hyperparams hyperparams(std::size_t i) const {
    return Hyperparams{samples[i].d, samples[i].g, isotropic};
  }
};

class McmcInitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Likelihood part of the sampling target; ok=false marks a state whose
/// evaluation failed (treated as log-likelihood -inf and auto-rejected).
struct LikEval {
  double log_lik = 0.0;
  double jitter = 0.0;
  bool ok = false;
};
using LogLikFn = std::function<LikEval(const VectorXd& d, double g)>;

struct MwgState {
  VectorXd d;
  double g = 0.0;
  LikEval lik;
};

struct MwgCounters {
  long d_proposed = 0;
  long d_accepted = 0;
  long g_proposed = 0;
  long g_accepted = 0;
};

/// One Metropolis-within-Gibbs sweep: each d entry in turn (one shared update
/// under isotropy), then g unless fixed at zero. Each update proposes a
/// log-normal random walk with probability 0.9 (Metropolis ratio carries the
/// log-Jacobian) or an independence draw from the prior with probability 0.1
/// (prior ratio cancels, leaving the likelihood ratio); the independence
/// component is the mode-jumping device for bimodal posteriors.
void mwg_step(MwgState& state, const LogLikFn& log_lik, const PriorSpec& prior,
              bool isotropic, double proposal_sd, SplitMix& rng, MwgCounters& counters);

/// Runs n_iter sweeps from d = 0.5, g = 0.01 (0 when fixed), storing every
/// thin-th state after burn. Deterministic given the seed.
Chain run_chain(const Dataset& data, const PriorSpec& prior, const McmcSettings& settings,
                std::uint64_t seed, bool isotropic = false);

/// Pooled posterior prediction: mean is the average of the per-sample
/// predictive means; lo/hi are empirical level-quantiles of Student-t draws
/// (draws_per_sample per stored sample per point), i.e. the
/// mixture-of-t posterior predictive. All in original response units.
struct PooledPrediction {
  VectorXd mean;
  VectorXd lo;
  VectorXd hi;
  std::vector<PredictiveDist> sample_dists;  // per stored sample, for Mahalanobis use
  int n_dropped = 0;
  bool degraded = false;  // more than 10% of samples failed to predict
};

PooledPrediction posterior_predict(const Dataset& data, const Chain& chain,
                                   const MatrixXd& Xstar, double level,
                                   int draws_per_sample, bool include_noise, SplitMix& rng,
                                   bool want_joint = false, bool want_intervals = true);

}  // namespace nuggp
