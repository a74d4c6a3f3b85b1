#pragma once

#include <cmath>

#include "nuggp/types.hpp"

namespace nuggp {

/// Gaussian correlation over rows of X with per-dimension denominators d:
///   K_jk = exp(-sum_l (x_jl - x_kl)^2 / d_l) + g * delta_jk
/// Built symmetric by construction, diagonal exactly 1 + g.
template <typename DX, typename DD>
Eigen::Matrix<typename DX::Scalar, Eigen::Dynamic, Eigen::Dynamic> gauss_correlation(
    const Eigen::MatrixBase<DX>& X, const Eigen::MatrixBase<DD>& d,
    typename DX::Scalar g) {
  using Scalar = typename DX::Scalar;
  const Index n = X.rows(), m = X.cols();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> K(n, n);
  for (Index j = 0; j < n; ++j) {
    K(j, j) = Scalar(1) + g;
    for (Index k = 0; k < j; ++k) {
      Scalar q = Scalar(0);
      for (Index l = 0; l < m; ++l) {
        const Scalar dx = X(j, l) - X(k, l);
        q += dx * dx / d(l);
      }
      const Scalar v = std::exp(-q);
      K(j, k) = v;
      K(k, j) = v;
    }
  }
  return K;
}

/// Correlation rows between test locations (rows of Xstar) and training
/// inputs. Never includes the nugget: a test point is a new realization even
/// when it coincides with a training site.
template <typename DX, typename DS, typename DD>
Eigen::Matrix<typename DX::Scalar, Eigen::Dynamic, Eigen::Dynamic> gauss_cross_correlation(
    const Eigen::MatrixBase<DX>& X, const Eigen::MatrixBase<DS>& Xstar,
    const Eigen::MatrixBase<DD>& d) {
  using Scalar = typename DX::Scalar;
  const Index n = X.rows(), p = Xstar.rows(), m = X.cols();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> C(p, n);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < n; ++j) {
      Scalar q = Scalar(0);
      for (Index l = 0; l < m; ++l) {
        const Scalar dx = Xstar(i, l) - X(j, l);
        q += dx * dx / d(l);
      }
      C(i, j) = std::exp(-q);
    }
  return C;
}

inline MatrixXd correlation_matrix(const MatrixXd& X, const Hyperparams& hp) {
  hp.validate();
  if (hp.d.size() != X.cols())
    throw std::invalid_argument("correlation_matrix: d has wrong dimension");
  return gauss_correlation(X, hp.d, hp.g);
}

inline MatrixXd cross_correlation(const MatrixXd& X, const MatrixXd& Xstar,
                                  const Hyperparams& hp) {
  hp.validate();
  if (X.cols() != Xstar.cols())
    throw std::invalid_argument("cross_correlation: input dimension mismatch");
  if (hp.d.size() != X.cols())
    throw std::invalid_argument("cross_correlation: d has wrong dimension");
  return gauss_cross_correlation(X, Xstar, hp.d);
}

/// Affine map of raw inputs onto the unit cube. Rejects degenerate bounds and
/// entries outside them (beyond a 1e-12 relative tolerance); values inside
/// the tolerance band are clamped to [0,1].
inline MatrixXd scale_inputs(const MatrixXd& raw, const std::vector<Bounds>& bounds) {
  if (!bounds_valid(bounds) || static_cast<Index>(bounds.size()) != raw.cols())
    throw std::invalid_argument("scale_inputs: invalid bounds");
  MatrixXd out(raw.rows(), raw.cols());
  for (Index l = 0; l < raw.cols(); ++l) {
    const auto& b = bounds[static_cast<std::size_t>(l)];
    const double span = b.hi - b.lo;
    const double tol = 1e-12 * std::max({1.0, std::abs(b.lo), std::abs(b.hi)});
    for (Index i = 0; i < raw.rows(); ++i) {
      const double v = raw(i, l);
      if (!(v >= b.lo - tol && v <= b.hi + tol))
        throw std::invalid_argument("scale_inputs: value out of bounds in column " +
                                    std::to_string(l));
      out(i, l) = std::clamp((v - b.lo) / span, 0.0, 1.0);
    }
  }
  return out;
}

/// Same affine map without the range check; prediction is allowed to
/// extrapolate outside the training cube.
inline MatrixXd scale_unchecked(const MatrixXd& raw, const std::vector<Bounds>& bounds) {
  if (!bounds_valid(bounds) || static_cast<Index>(bounds.size()) != raw.cols())
    throw std::invalid_argument("scale_unchecked: invalid bounds");
  MatrixXd out(raw.rows(), raw.cols());
  for (Index l = 0; l < raw.cols(); ++l) {
    const auto& b = bounds[static_cast<std::size_t>(l)];
    out.col(l) = (raw.col(l).array() - b.lo) / (b.hi - b.lo);
  }
  return out;
}

/// Inverse of scale_unchecked.
inline MatrixXd unscale(const MatrixXd& scaled, const std::vector<Bounds>& bounds) {
  if (!bounds_valid(bounds) || static_cast<Index>(bounds.size()) != scaled.cols())
    throw std::invalid_argument("unscale: invalid bounds");
  MatrixXd out(scaled.rows(), scaled.cols());
  for (Index l = 0; l < scaled.cols(); ++l) {
    const auto& b = bounds[static_cast<std::size_t>(l)];
    out.col(l) = b.lo + (b.hi - b.lo) * scaled.col(l).array();
  }
  return out;
}

}  // namespace nuggp
