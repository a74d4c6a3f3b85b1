#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "nuggp/design.hpp"
#include "nuggp/inference.hpp"
#include "nuggp/kernels.hpp"
#include "nuggp/metrics.hpp"
#include "nuggp/simulators.hpp"
#include "nuggp/special.hpp"

using namespace nuggp;

namespace {

Dataset make_dataset(const MatrixXd& X, const VectorXd& y) {
  Dataset ds;
  ds.X = X;
  ds.bounds.assign(static_cast<std::size_t>(X.cols()), Bounds{0.0, 1.0});
  ds.y = y;
  return ds;
}

Dataset gramacy_dataset(Index n, std::uint64_t seed) {
  const std::vector<Bounds> dom{{0.5, 2.5}};
  const MatrixXd raw = uniform_design(n, 1, dom, seed);
  VectorXd y(n);
  for (Index i = 0; i < n; ++i) y(i) = gramacy1d(raw(i, 0));
  return Dataset::from_raw(raw, dom, y);
}

}  // namespace

TEST_CASE("log prior closed forms") {
  PriorSpec prior;
  prior.d_shape = prior.d_rate = 1.0;
  prior.g_shape = prior.g_rate = 1.0;
  // Exp(1) at d = 1 and g = 1: log e^-1 + log e^-1 = -2
  CHECK(log_prior({VectorXd::Constant(1, 1.0), 1.0, false}, prior) ==
        doctest::Approx(-2.0).epsilon(1e-14));

  prior.fix_g_zero = true;
  CHECK(log_prior({VectorXd::Constant(1, 1.0), 0.0, false}, prior) ==
        doctest::Approx(-1.0).epsilon(1e-14));

  prior.fix_g_zero = false;
  CHECK(std::isinf(log_prior({VectorXd::Constant(1, 1.0), 0.0, false}, prior)));

  // isotropic: a single d term even with several dimensions
  PriorSpec p2;
  p2.d_shape = 2.0;
  p2.d_rate = 3.0;
  p2.fix_g_zero = true;
  CHECK(log_prior({VectorXd::Constant(3, 0.5), 0.0, true}, p2) ==
        doctest::Approx(0.004077396776273955).epsilon(1e-12));
  CHECK(log_prior({VectorXd::Constant(3, 0.5), 0.0, false}, p2) ==
        doctest::Approx(3 * 0.004077396776273955).epsilon(1e-12));
}

TEST_CASE("a proposal identical to the current state is always accepted") {
  // proposal_sd = 0 makes the random walk propose the current value; with a
  // flat likelihood the independence draws are accepted too, so every single
  // update must accept.
  PriorSpec prior;
  LogLikFn flat = [](const VectorXd&, double) { return LikEval{0.0, 0.0, true}; };
  MwgState st;
  st.d = VectorXd::Constant(2, 0.7);
  st.g = 0.2;
  st.lik = flat(st.d, st.g);
  SplitMix rng(55);
  MwgCounters counters;
  for (int i = 0; i < 500; ++i) mwg_step(st, flat, prior, false, 0.0, rng, counters);
  CHECK(counters.d_proposed == 1000);
  CHECK(counters.d_accepted == 1000);
  CHECK(counters.g_proposed == 500);
  CHECK(counters.g_accepted == 500);
}

TEST_CASE("fixed-zero nugget stays exactly zero and states stay positive") {
  const Dataset ds = gramacy_dataset(8, 17);
  PriorSpec prior;
  prior.fix_g_zero = true;
  McmcSettings settings{800, 100, 5, 0.5};
  const Chain chain = run_chain(ds, prior, settings, 321);
  REQUIRE(!chain.samples.empty());
  for (const auto& s : chain.samples) {
    CHECK(s.g == 0.0);
    CHECK(s.d(0) > 0.0);
    CHECK(std::isfinite(s.log_post));
  }
  CHECK(chain.accept_g == 0.0);
}

TEST_CASE("same seed gives a bitwise-identical chain") {
  const Dataset ds = gramacy_dataset(10, 77);
  PriorSpec prior;
  McmcSettings settings{600, 100, 5, 0.5};
  const Chain a = run_chain(ds, prior, settings, 4242);
  const Chain b = run_chain(ds, prior, settings, 4242);
  REQUIRE(a.samples.size() == b.samples.size());
  CHECK(a.accept_d == b.accept_d);
  CHECK(a.accept_g == b.accept_g);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].d(0) == b.samples[i].d(0));
    CHECK(a.samples[i].g == b.samples[i].g);
    CHECK(a.samples[i].log_post == b.samples[i].log_post);
  }
  const Chain c = run_chain(ds, prior, settings, 4243);
  bool differs = false;
  for (std::size_t i = 0; i < std::min(a.samples.size(), c.samples.size()); ++i)
    differs = differs || a.samples[i].g != c.samples[i].g;
  CHECK(differs);
}

TEST_CASE("burn = n_iter - thin stores exactly one sample") {
  const Dataset ds = gramacy_dataset(6, 5);
  PriorSpec prior;
  McmcSettings settings{100, 95, 5, 0.5};
  const Chain chain = run_chain(ds, prior, settings, 9);
  CHECK(chain.samples.size() == 1);
}

TEST_CASE("default proposal sd lands acceptance in the sanity band") {
  const Dataset ds = gramacy_dataset(15, 2024);
  PriorSpec prior;
  McmcSettings settings;  // defaults, proposal_sd = 0.5
  settings.n_iter = 3000;
  settings.burn = 500;
  const Chain chain = run_chain(ds, prior, settings, 11);
  CHECK(chain.accept_d >= 0.1);
  CHECK(chain.accept_d <= 0.8);
  CHECK(chain.accept_g >= 0.1);
  CHECK(chain.accept_g <= 0.8);
}

TEST_CASE("the sampler visits both modes of an explicitly bimodal target") {
  // Posterior = prior * lik with lik built so the product is an equal-weight
  // log-normal mixture with well-separated modes.
  PriorSpec prior;
  prior.d_shape = 1.0;
  prior.d_rate = 0.5;
  prior.fix_g_zero = true;
  const double mu1 = std::log(0.2), mu2 = std::log(5.0), s = 0.3;
  auto ln_logpdf = [s](double x, double mu) {
    const double z = (std::log(x) - mu) / s;
    return -std::log(x * s * std::sqrt(2.0 * M_PI)) - 0.5 * z * z;
  };
  LogLikFn lik = [&](const VectorXd& d, double) {
    const double mix = 0.5 * std::exp(ln_logpdf(d(0), mu1)) +
                       0.5 * std::exp(ln_logpdf(d(0), mu2));
    return LikEval{std::log(mix) - gamma_logpdf(d(0), prior.d_shape, prior.d_rate), 0.0,
                   true};
  };

  MwgState st;
  st.d = VectorXd::Constant(1, 0.5);
  st.g = 0.0;
  st.lik = lik(st.d, st.g);
  SplitMix rng(31337);
  MwgCounters counters;
  const double split = 0.5 * (mu1 + mu2);
  int low = 0, high = 0;
  for (int i = 0; i < 10000; ++i) {
    mwg_step(st, lik, prior, false, 0.5, rng, counters);
    (std::log(st.d(0)) < split ? low : high)++;
  }
  CHECK(low > 2000);
  CHECK(high > 2000);
}

TEST_CASE("stationary distribution matches the quadrature posterior (detailed balance)") {
  // Two symmetrically placed points with opposite standardized responses and
  // a near-flat prior; the d marginal is available by direct integration.
  MatrixXd raw(2, 1);
  raw << 0.25, 0.75;
  VectorXd y(2);
  y << 0.0, 1.0;
  const Dataset ds = Dataset::from_raw(raw, {{0.0, 1.0}}, y);
  PriorSpec prior;
  prior.d_shape = 1.0;
  prior.d_rate = 0.01;
  prior.fix_g_zero = true;

  // quadrature reference CDF over log d
  const int grid_n = 4000;
  std::vector<double> dg(grid_n), un(grid_n);
  double max_lp = -1e300;
  for (int i = 0; i < grid_n; ++i) {
    const double u = -9.0 + 18.0 * i / (grid_n - 1);  // log d
    dg[static_cast<std::size_t>(i)] = u;
    const Hyperparams hp{VectorXd::Constant(1, std::exp(u)), 0.0, false};
    const double lp = log_marginal(ds, hp, prior.a, prior.b) +
                      gamma_logpdf(std::exp(u), prior.d_shape, prior.d_rate) + u;
    un[static_cast<std::size_t>(i)] = lp;
    max_lp = std::max(max_lp, lp);
  }
  std::vector<double> cdf(grid_n, 0.0);
  for (int i = 1; i < grid_n; ++i) {
    const double h = dg[static_cast<std::size_t>(i)] - dg[static_cast<std::size_t>(i - 1)];
    cdf[static_cast<std::size_t>(i)] =
        cdf[static_cast<std::size_t>(i - 1)] +
        0.5 * h *
            (std::exp(un[static_cast<std::size_t>(i)] - max_lp) +
             std::exp(un[static_cast<std::size_t>(i - 1)] - max_lp));
  }
  for (auto& c : cdf) c /= cdf.back();
  auto ref_cdf = [&](double logd) {
    const auto it = std::lower_bound(dg.begin(), dg.end(), logd);
    if (it == dg.begin()) return 0.0;
    if (it == dg.end()) return 1.0;
    const auto i = static_cast<std::size_t>(it - dg.begin());
    const double w = (logd - dg[i - 1]) / (dg[i] - dg[i - 1]);
    return (1.0 - w) * cdf[i - 1] + w * cdf[i];
  };

  McmcSettings settings{60000, 2000, 2, 0.5};
  const Chain chain = run_chain(ds, prior, settings, 271828);
  std::vector<double> logd;
  logd.reserve(chain.samples.size());
  for (const auto& s : chain.samples) logd.push_back(std::log(s.d(0)));
  std::sort(logd.begin(), logd.end());
  for (double p : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const double q = logd[static_cast<std::size_t>(p * (logd.size() - 1))];
    CHECK(ref_cdf(q) == doctest::Approx(p).epsilon(0.12));
  }
}

TEST_CASE("a known nugget is recovered from model-simulated data") {
  // Data simulated from the model itself: d and sigma^2 drawn from the prior,
  // g fixed at 0.25, n = 100. The posterior median of g should bracket the
  // truth in at least 8 of 10 seeded runs.
  const Index n = 100;
  const double g_true = 0.25;
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SplitMix rng(derive_seed(515, {seed}));
    const std::vector<Bounds> dom{{0.0, 1.0}};
    const MatrixXd X = uniform_design(n, 1, dom, derive_seed(616, {seed}));
    const double d_true = rng.gamma(1.5, 1.5);
    const double s2_true = 1.0 / rng.gamma(1.5, 1.5);
    const MatrixXd K = gauss_correlation(X, VectorXd::Constant(1, d_true), g_true);
    const CholFactor cf = chol_with_jitter(K);
    VectorXd z(n);
    for (Index i = 0; i < n; ++i) z(i) = rng.normal();
    const VectorXd y = std::sqrt(s2_true) * (cf.L * z);
    const Dataset ds = Dataset::from_raw(X, dom, y);

    PriorSpec prior;
    McmcSettings settings{2500, 500, 4, 0.5};
    const Chain chain = run_chain(ds, prior, settings, derive_seed(717, {seed}));
    std::vector<double> gs;
    gs.reserve(chain.samples.size());
    for (const auto& s : chain.samples) gs.push_back(s.g);
    const double median = quantile_linear(std::move(gs), 0.5);
    if (median >= 0.1 && median <= 0.5) ++hits;
  }
  CHECK(hits >= 8);
}

TEST_CASE("pooled prediction with one sample converges to its credible bounds") {
  MatrixXd X(4, 1);
  X << 0.1, 0.4, 0.6, 0.9;
  VectorXd y(4);
  y << 0.5, -0.8, 0.3, 1.0;
  const Dataset ds = make_dataset(X, y);

  Chain chain;
  chain.m = 1;
  chain.samples.push_back({VectorXd::Constant(1, 0.08), 0.1, 0.0, 0.0});

  MatrixXd Xs(3, 1);
  Xs << 0.2, 0.5, 0.77;
  SplitMix rng(404);
  const PooledPrediction pooled =
      posterior_predict(ds, chain, Xs, 0.9, 200000, true, rng);
  const PredictiveDist pd =
      predict(ds, chain.hyperparams(0), Xs, chain.prior.a, chain.prior.b, true, false);
  const Interval iv = credible_bounds(pd, 0.9);
  for (Index i = 0; i < 3; ++i) {
    const double width = iv.hi(i) - iv.lo(i);
    CHECK(std::fabs(pooled.mean(i) - pd.loc(i)) < 1e-10);
    CHECK(std::fabs(pooled.lo(i) - iv.lo(i)) < 0.02 * width);
    CHECK(std::fabs(pooled.hi(i) - iv.hi(i)) < 0.02 * width);
  }

  // duplicating the sample changes nothing beyond Monte-Carlo error
  Chain doubled = chain;
  doubled.samples.push_back(chain.samples[0]);
  SplitMix rng2(405);
  const PooledPrediction pooled2 =
      posterior_predict(ds, doubled, Xs, 0.9, 100000, true, rng2);
  for (Index i = 0; i < 3; ++i) {
    const double width = iv.hi(i) - iv.lo(i);
    CHECK(std::fabs(pooled2.mean(i) - pooled.mean(i)) < 1e-10);
    CHECK(std::fabs(pooled2.lo(i) - pooled.lo(i)) < 0.03 * width);
    CHECK(std::fabs(pooled2.hi(i) - pooled.hi(i)) < 0.03 * width);
  }
}

TEST_CASE("pooled prediction is invariant to sample order") {
  const Dataset ds = gramacy_dataset(10, 808);
  PriorSpec prior;
  McmcSettings settings{1200, 200, 10, 0.5};
  const Chain chain = run_chain(ds, prior, settings, 90210);
  REQUIRE(chain.samples.size() == 100);
  Chain reversed = chain;
  std::reverse(reversed.samples.begin(), reversed.samples.end());

  MatrixXd Xs(5, 1);
  Xs << 0.05, 0.3, 0.55, 0.72, 0.95;
  SplitMix r1(1), r2(2);
  const PooledPrediction a = posterior_predict(ds, chain, Xs, 0.9, 2000, true, r1);
  const PooledPrediction b = posterior_predict(ds, reversed, Xs, 0.9, 2000, true, r2);
  for (Index i = 0; i < 5; ++i) {
    const double width = std::max(a.hi(i) - a.lo(i), 1e-12);
    CHECK(std::fabs(a.mean(i) - b.mean(i)) < 1e-10);
    CHECK(std::fabs(a.lo(i) - b.lo(i)) < 0.1 * width);
    CHECK(std::fabs(a.hi(i) - b.hi(i)) < 0.1 * width);
  }
}

TEST_CASE("samples that cannot predict are dropped and flagged") {
  // A zero-nugget state with an essentially rank-one kernel and inconsistent
  // responses blows up the posterior scale; its joint predictive matrix fails
  // the PSD guard, so the sample is dropped from the pool.
  MatrixXd X(5, 1);
  X << 0.05, 0.3, 0.5, 0.7, 0.95;
  VectorXd y(5);
  y << 1.0, -1.0, 1.0, -1.0, 1.0;
  const Dataset ds = make_dataset(X, y);

  Chain chain;
  chain.m = 1;
  chain.samples.push_back({VectorXd::Constant(1, 0.05), 0.05, 0.0, 0.0});  // fine
  chain.samples.push_back({VectorXd::Constant(1, 1e9), 0.0, 0.0, 0.0});   // fails
  chain.samples.push_back({VectorXd::Constant(1, 0.05), 0.05, 0.0, 0.0});  // fine

  SplitMix rng(7);
  const PooledPrediction pooled =
      posterior_predict(ds, chain, X, 0.9, 50, true, rng, /*want_joint=*/true);
  CHECK(pooled.n_dropped == 1);
  CHECK(pooled.degraded);  // 1 of 3 dropped is above the 10% threshold
  CHECK(pooled.sample_dists.size() == 2);
}

TEST_CASE("run_chain validates its settings") {
  const Dataset ds = gramacy_dataset(5, 3);
  PriorSpec prior;
  CHECK_THROWS_AS(run_chain(ds, prior, {100, 100, 5, 0.5}, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_chain(ds, prior, {100, 50, 0, 0.5}, 1), std::invalid_argument);
  PriorSpec bad;
  bad.a = -1.0;
  CHECK_THROWS_AS(run_chain(ds, bad, {100, 50, 5, 0.5}, 1), std::invalid_argument);
}
