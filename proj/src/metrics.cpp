#include "nuggp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nuggp/chol.hpp"
#include "nuggp/special.hpp"

namespace nuggp {

double mse(const VectorXd& pred_mean, const VectorXd& truth) {
  if (pred_mean.size() != truth.size() || pred_mean.size() < 1)
    throw std::invalid_argument("mse: vectors must have equal nonzero lengths");
  return (pred_mean - truth).squaredNorm() / static_cast<double>(pred_mean.size());
}

double pointwise_coverage(const VectorXd& lo, const VectorXd& hi, const VectorXd& truth) {
  if (lo.size() != hi.size() || lo.size() != truth.size() || lo.size() < 1)
    throw std::invalid_argument("pointwise_coverage: length mismatch");
  Index covered = 0;
  for (Index i = 0; i < lo.size(); ++i) {
    if (!(lo(i) <= hi(i)))
      throw std::invalid_argument("pointwise_coverage: lo > hi at point " +
                                  std::to_string(i));
    if (lo(i) <= truth(i) && truth(i) <= hi(i)) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(lo.size());
}

double mahalanobis_distance(const VectorXd& truth, const VectorXd& loc,
                            const MatrixXd& joint_scale, double df) {
  if (truth.size() != loc.size() || joint_scale.rows() != truth.size() ||
      joint_scale.cols() != truth.size())
    throw std::invalid_argument("mahalanobis_distance: dimension mismatch");
  if (!(df > 2.0))
    throw std::invalid_argument("mahalanobis_distance: covariance undefined for df <= 2");
  const MatrixXd sigma = joint_scale * (df / (df - 2.0));
  const CholFactor cf = chol_with_jitter(sigma);
  const VectorXd v = cf.forward(VectorXd(truth - loc));
  return v.norm();
}

TTest paired_t_test(const VectorXd& a, const VectorXd& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("paired_t_test: need equal lengths >= 2");
  const Index n = a.size();
  const VectorXd diff = a - b;
  const double mean = diff.mean();
  const double ss = (diff.array() - mean).square().sum();
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0)) throw DegenerateInput("paired_t_test: differences have zero variance");
  const double t = mean / (sd / std::sqrt(static_cast<double>(n)));
  const double p = 2.0 * (1.0 - student_t_cdf(std::fabs(t), static_cast<double>(n - 1)));
  return {t, p, n};
}

double quantile_linear(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile_linear: empty sample");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("quantile_linear: p must be in [0,1]");
  const double h = static_cast<double>(values.size() - 1) * p;
  const auto i = static_cast<std::size_t>(std::floor(h));
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(i),
                   values.end());
  const double xlo = values[i];
  if (h == static_cast<double>(i) || i + 1 >= values.size()) return xlo;
  const double xhi =
      *std::min_element(values.begin() + static_cast<std::ptrdiff_t>(i) + 1, values.end());
  return xlo + (h - static_cast<double>(i)) * (xhi - xlo);
}

SummaryTable SummaryTable::of(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("SummaryTable: empty sample");
  std::sort(values.begin(), values.end());
  auto q = [&](double p) {
    const double h = static_cast<double>(values.size() - 1) * p;
    const auto i = static_cast<std::size_t>(std::floor(h));
    const double xlo = values[i];
    if (h == static_cast<double>(i) || i + 1 >= values.size()) return xlo;
    return xlo + (h - static_cast<double>(i)) * (values[i + 1] - xlo);
  };
  SummaryTable t;
  t.min = values.front();
  t.q1 = q(0.25);
  t.median = q(0.5);
  t.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  t.q3 = q(0.75);
  t.max = values.back();
  return t;
}

}  // namespace nuggp
