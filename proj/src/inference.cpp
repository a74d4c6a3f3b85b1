#include "nuggp/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nuggp/metrics.hpp"
#include "nuggp/special.hpp"

namespace nuggp {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kIndepProposalProb = 0.1;
}  // namespace

void PriorSpec::validate() const {
  for (double v : {d_shape, d_rate, g_shape, g_rate, a, b})
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("PriorSpec: shapes, rates, a, b must be positive");
}

double log_prior(const Hyperparams& hp, const PriorSpec& prior) {
  prior.validate();
  hp.validate();
  double lp = 0.0;
  const Index terms = hp.isotropic ? 1 : hp.d.size();
  for (Index l = 0; l < terms; ++l)
    lp += gamma_logpdf(hp.d(l), prior.d_shape, prior.d_rate);
  if (!prior.fix_g_zero) {
    if (hp.g <= 0.0) return kNegInf;
    lp += gamma_logpdf(hp.g, prior.g_shape, prior.g_rate);
  }
  return lp;
}

void mwg_step(MwgState& state, const LogLikFn& log_lik, const PriorSpec& prior,
              bool isotropic, double proposal_sd, SplitMix& rng, MwgCounters& counters) {
  // One Metropolis update of a single positive parameter; get/set close over
  // the state so isotropic chains move all d entries together.
  auto metropolis_update = [&](auto&& get, auto&& set, double shape, double rate) {
    const double old_value = get();
    const bool indep = rng.u01() < kIndepProposalProb;
    double proposed;
    double extra = 0.0;  // log-ratio terms beyond the likelihood
    if (indep) {
      // Independence draw from the prior: the prior ratio cancels against the
      // proposal ratio, leaving the likelihood ratio alone.
      proposed = rng.gamma(shape, rate);
    } else {
      proposed = old_value * std::exp(proposal_sd * rng.normal());
      extra = gamma_logpdf(proposed, shape, rate) - gamma_logpdf(old_value, shape, rate) +
              std::log(proposed) - std::log(old_value);  // prior ratio + log-Jacobian
    }
    if (!(proposed > 0.0) || !std::isfinite(proposed)) return false;
    set(proposed);
    const LikEval trial = log_lik(state.d, state.g);
    const double cur = state.lik.ok ? state.lik.log_lik : kNegInf;
    const double cand = trial.ok ? trial.log_lik : kNegInf;
    double log_ratio = cand - cur + extra;
    if (std::isnan(log_ratio)) log_ratio = (trial.ok && !state.lik.ok) ? 1.0 : kNegInf;
    if (std::log(rng.u01()) < log_ratio) {
      state.lik = trial;
      return true;
    }
    set(old_value);
    return false;
  };

  const Index d_sites = isotropic ? 1 : state.d.size();
  for (Index l = 0; l < d_sites; ++l) {
    ++counters.d_proposed;
    auto get = [&] { return state.d(l); };
    auto set = [&](double v) {
      if (isotropic)
        state.d.setConstant(v);
      else
        state.d(l) = v;
    };
    if (metropolis_update(get, set, prior.d_shape, prior.d_rate)) ++counters.d_accepted;
  }
  if (!prior.fix_g_zero) {
    ++counters.g_proposed;
    auto get = [&] { return state.g; };
    auto set = [&](double v) { state.g = v; };
    if (metropolis_update(get, set, prior.g_shape, prior.g_rate)) ++counters.g_accepted;
  }
}

Chain run_chain(const Dataset& data, const PriorSpec& prior, const McmcSettings& settings,
                std::uint64_t seed, bool isotropic) {
  prior.validate();
  data.validate();
  if (!(settings.n_iter > settings.burn) || settings.burn < 0)
    throw std::invalid_argument("run_chain: need n_iter > burn >= 0");
  if (settings.thin < 1) throw std::invalid_argument("run_chain: thin must be >= 1");
  if (!(settings.proposal_sd >= 0.0))
    throw std::invalid_argument("run_chain: proposal_sd must be >= 0");

  const Index m = data.m();
  LogLikFn lik_fn = [&data, &prior, isotropic](const VectorXd& d, double g) -> LikEval {
    try {
      const MarginalResult r =
          log_marginal_detail(data, Hyperparams{d, g, isotropic}, prior.a, prior.b);
      return {r.value, r.jitter_used, std::isfinite(r.value)};
    } catch (const FactorizationError&) {
      return {kNegInf, kJitterMax, false};
    }
  };

  SplitMix rng(seed);
  MwgState state;
  state.d = VectorXd::Constant(m, 0.5);
  state.g = prior.fix_g_zero ? 0.0 : 0.01;
  state.lik = lik_fn(state.d, state.g);

  Chain chain;
  chain.seed = seed;
  chain.isotropic = isotropic;
  chain.m = m;
  chain.prior = prior;
  chain.settings = settings;

  MwgCounters counters;
  for (int iter = 1; iter <= settings.n_iter; ++iter) {
    mwg_step(state, lik_fn, prior, isotropic, settings.proposal_sd, rng, counters);
    if (!state.lik.ok && iter >= 1000)
      throw McmcInitError(
          "run_chain: no finite posterior state found within 1000 iterations");
    if (iter > settings.burn && (iter - settings.burn) % settings.thin == 0 &&
        state.lik.ok) {
      const Hyperparams hp{state.d, state.g, isotropic};
      chain.samples.push_back(
          {state.d, state.g, state.lik.log_lik + log_prior(hp, prior), state.lik.jitter});
    }
  }
  chain.accept_d = counters.d_proposed > 0
                       ? static_cast<double>(counters.d_accepted) / counters.d_proposed
                       : 0.0;
  chain.accept_g = counters.g_proposed > 0
                       ? static_cast<double>(counters.g_accepted) / counters.g_proposed
                       : 0.0;
  return chain;
}

PooledPrediction posterior_predict(const Dataset& data, const Chain& chain,
                                   const MatrixXd& Xstar, double level,
                                   int draws_per_sample, bool include_noise, SplitMix& rng,
                                   bool want_joint, bool want_intervals) {
  if (chain.samples.empty())
    throw std::invalid_argument("posterior_predict: chain has no samples");
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("posterior_predict: level must be in (0,1)");
  if (draws_per_sample < 1)
    throw std::invalid_argument("posterior_predict: draws_per_sample must be >= 1");

  const Index p = Xstar.rows();
  PooledPrediction out;
  out.sample_dists.reserve(chain.samples.size());
  for (std::size_t s = 0; s < chain.samples.size(); ++s) {
    try {
      out.sample_dists.push_back(predict(data, chain.hyperparams(s), Xstar, chain.prior.a,
                                         chain.prior.b, include_noise, want_joint));
    } catch (const FactorizationError&) {
      ++out.n_dropped;
    }
  }
  if (out.sample_dists.empty())
    throw FactorizationError("posterior_predict: every posterior sample failed to predict",
                             kJitterMax);
  out.degraded = out.n_dropped * 10 > static_cast<int>(chain.samples.size());

  const auto n_kept = out.sample_dists.size();
  out.mean = VectorXd::Zero(p);
  for (const auto& pd : out.sample_dists) out.mean += pd.loc;
  out.mean = data.destandardize(VectorXd(out.mean / static_cast<double>(n_kept)));

  if (want_intervals) {
    out.lo.resize(p);
    out.hi.resize(p);
    const double qlo = 0.5 * (1.0 - level), qhi = 0.5 * (1.0 + level);
    std::vector<double> draws(n_kept * static_cast<std::size_t>(draws_per_sample));
    for (Index j = 0; j < p; ++j) {
      std::size_t idx = 0;
      for (const auto& pd : out.sample_dists) {
        const double sd = std::sqrt(pd.scale(j));
        for (int k = 0; k < draws_per_sample; ++k)
          draws[idx++] = pd.loc(j) + sd * rng.student_t(pd.df);
      }
      out.lo(j) = data.destandardize(quantile_linear(draws, qlo));
      out.hi(j) = data.destandardize(quantile_linear(draws, qhi));
    }
  }
  return out;
}

}  // namespace nuggp
