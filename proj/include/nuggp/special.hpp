#pragma once

namespace nuggp {

// Log of the beta function.
double lbeta(double a, double b);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double betainc_reg(double a, double b, double x);

double student_t_cdf(double t, double df);

/// Central Student-t inverse CDF. Uses the normal quantile for df beyond 1e7.
double student_t_quantile(double p, double df);

double normal_quantile(double p);

/// log density of Gamma(shape k, rate r) at x; -inf for x <= 0.
double gamma_logpdf(double x, double shape, double rate);

}  // namespace nuggp
