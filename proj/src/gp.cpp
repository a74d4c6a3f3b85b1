#include "nuggp/gp.hpp"

#include <cmath>

#include "nuggp/special.hpp"

namespace nuggp {

MarginalResult log_marginal_detail(const Dataset& data, const Hyperparams& hp, double a,
                                   double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("log_marginal: a and b must be > 0");
  if (data.n() < 1) throw std::invalid_argument("log_marginal: empty dataset");
  const Index n = data.n();
  const MatrixXd K = correlation_matrix(data.X, hp);
  const CholFactor cf = chol_with_jitter(K);
  const VectorXd v = cf.forward(data.y);
  const double quad = v.squaredNorm();
  const double lp = a * std::log(b) + std::lgamma(a + 0.5 * n) - std::lgamma(a) -
                    0.5 * n * std::log(2.0 * M_PI) - 0.5 * cf.log_det -
                    (a + 0.5 * n) * std::log(b + 0.5 * quad);
  return {lp, cf.jitter_used};
}

double log_marginal(const Dataset& data, const Hyperparams& hp, double a, double b) {
  return log_marginal_detail(data, hp, a, b).value;
}

PredictiveDist predict(const Dataset& data, const Hyperparams& hp, const MatrixXd& Xstar,
                       double a, double b, bool include_noise, bool want_joint) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("predict: a and b must be > 0");
  if (Xstar.cols() != data.m())
    throw std::invalid_argument("predict: test input dimension mismatch");
  const Index n = data.n(), p = Xstar.rows();

  const MatrixXd K = correlation_matrix(data.X, hp);
  const CholFactor cf = chol_with_jitter(K);
  const VectorXd alpha = cf.solve(data.y);
  const double quad = data.y.dot(alpha);
  const double df = 2.0 * a + static_cast<double>(n);
  const double s2 = (2.0 * b + quad) / df;

  const MatrixXd Kx = cross_correlation(data.X, Xstar, hp);  // p x n
  const double kss_diag = 1.0 + (include_noise ? hp.g : 0.0);

  PredictiveDist pd;
  pd.df = df;
  pd.includes_noise = include_noise;
  pd.y_mean = data.y_mean;
  pd.y_sd = data.y_sd;
  pd.loc = Kx * alpha;

  const MatrixXd V = cf.forward(MatrixXd(Kx.transpose()));  // n x p
  pd.scale.resize(p);
  for (Index i = 0; i < p; ++i)
    pd.scale(i) = std::max(0.0, s2 * (kss_diag - V.col(i).squaredNorm()));

  if (want_joint) {
    MatrixXd Kss = gauss_cross_correlation(Xstar, Xstar, hp.d);
    Kss.diagonal().setConstant(kss_diag);
    MatrixXd J = s2 * (Kss - V.transpose() * V);
    J = 0.5 * (J + J.transpose()).eval();  // symmetrize
    // Numerical-failure guard: the symmetrized matrix must not have an
    // eigenvalue below -1e-8.
    Eigen::LLT<MatrixXd> probe(J);
    if (probe.info() != Eigen::Success) {
      MatrixXd Jshift = J;
      Jshift.diagonal().array() += 1e-8;
      Eigen::LLT<MatrixXd> probe2(Jshift);
      if (probe2.info() != Eigen::Success)
        throw FactorizationError("predict: joint scale matrix is not PSD", 1e-8);
    }
    pd.joint_scale = std::move(J);
  }
  return pd;
}

Interval credible_bounds(const PredictiveDist& pd, double level) {
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("credible_bounds: level must be in (0,1)");
  const double tq = student_t_quantile(0.5 * (1.0 + level), pd.df);
  Interval iv;
  const Index p = pd.loc.size();
  iv.lo.resize(p);
  iv.hi.resize(p);
  for (Index i = 0; i < p; ++i) {
    const double center = pd.y_mean + pd.y_sd * pd.loc(i);
    const double half = tq * std::sqrt(pd.scale(i)) * pd.y_sd;
    iv.lo(i) = center - half;
    iv.hi(i) = center + half;
  }
  return iv;
}

}  // namespace nuggp
