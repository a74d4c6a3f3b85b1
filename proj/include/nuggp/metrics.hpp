#pragma once

#include <vector>

#include "nuggp/types.hpp"

namespace nuggp {

/// Mean squared error, in the units of the inputs squared.
double mse(const VectorXd& pred_mean, const VectorXd& truth);

/// Fraction of points with lo <= truth <= hi.
double pointwise_coverage(const VectorXd& lo, const VectorXd& hi, const VectorXd& truth);

/// sqrt((truth-loc)' Sigma^{-1} (truth-loc)) with Sigma = joint_scale*df/(df-2),
/// the predictive covariance. Factorization goes through the jitter ladder;
/// df <= 2 is rejected (the covariance is undefined).
double mahalanobis_distance(const VectorXd& truth, const VectorXd& loc,
                            const MatrixXd& joint_scale, double df);

struct TTest {
  double t = 0.0;
  double p_two_sided = 1.0;
  Index n = 0;
};

/// Paired t-test of mean(a-b) = 0; throws DegenerateInput when the
/// differences have zero variance.
TTest paired_t_test(const VectorXd& a, const VectorXd& b);

/// Sample quantile with the linear-interpolation convention used project-wide
/// (R type 7): h = (n-1)p, interpolate between the bracketing order statistics.
double quantile_linear(std::vector<double> values, double p);

/// The six-number summary layout of the result tables:
/// Min. / 1st Qu. / Median / Mean / 3rd Qu. / Max.
struct SummaryTable {
  double min = 0, q1 = 0, median = 0, mean = 0, q3 = 0, max = 0;
  static SummaryTable of(std::vector<double> values);
};

}  // namespace nuggp
