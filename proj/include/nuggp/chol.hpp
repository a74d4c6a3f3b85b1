#pragma once

#include <cmath>
#include <optional>

#include "nuggp/types.hpp"

namespace nuggp {

inline constexpr double kJitterFirst = 1e-10;
inline constexpr double kJitterMax = 1e-4;

/// Lower-triangular Cholesky factor of a (possibly jittered) matrix, together
/// with the jitter that was needed and the log-determinant of the jittered
/// matrix.
template <typename Scalar>
struct CholFactorT {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> L;
  Scalar jitter_used = Scalar(0);
  Scalar log_det = Scalar(0);

  // (L L^T)^{-1} b
  template <typename Rhs>
  auto solve(const Rhs& b) const {
    auto y = L.template triangularView<Eigen::Lower>().solve(b).eval();
    return L.transpose().template triangularView<Eigen::Upper>().solve(y).eval();
  }
  // L^{-1} b
  template <typename Rhs>
  auto forward(const Rhs& b) const {
    return L.template triangularView<Eigen::Lower>().solve(b).eval();
  }
};

using CholFactor = CholFactorT<double>;

/// Cholesky with an escalating diagonal jitter. The matrix is tried as given
/// first (jitter_used stays 0 when that works), then with jitter 1e-10
/// growing tenfold per retry up to 1e-4. Throws FactorizationError carrying
/// the final jitter when every rung fails, and std::invalid_argument when the
/// input is not symmetric (tolerance 1e-10 relative to the largest entry).
template <typename Derived>
CholFactorT<typename Derived::Scalar> chol_with_jitter(const Eigen::MatrixBase<Derived>& A) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Index n = A.rows();
  if (A.cols() != n) throw std::invalid_argument("chol_with_jitter: matrix must be square");
  const Mat M = A;
  if (n > 0) {
    const Scalar scale = std::max(Scalar(1), M.cwiseAbs().maxCoeff());
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-10) * scale)
      throw std::invalid_argument("chol_with_jitter: matrix not symmetric");
  }

  auto attempt = [&](double jitter) -> std::optional<CholFactorT<Scalar>> {
    Mat Aj = M;
    if (jitter > 0.0) Aj.diagonal().array() += Scalar(jitter);
    Eigen::LLT<Mat> llt(Aj);
    if (llt.info() != Eigen::Success) return std::nullopt;
    CholFactorT<Scalar> f;
    f.L = llt.matrixL();
    // LLT can "succeed" on a numerically singular matrix with a roundoff-level
    // pivot; such a factor solves to garbage. Treat it as a failure so the
    // ladder escalates.
    const Scalar pmin = f.L.diagonal().minCoeff();
    const Scalar pmax = f.L.diagonal().maxCoeff();
    const Scalar eps = Eigen::NumTraits<Scalar>::epsilon();
    if (!(pmin > Scalar(0)) ||
        pmin * pmin <= Scalar(n) * eps * pmax * pmax)
      return std::nullopt;
    f.jitter_used = Scalar(jitter);
    f.log_det = Scalar(2) * f.L.diagonal().array().log().sum();
    if (!std::isfinite(static_cast<double>(f.log_det))) return std::nullopt;
    return f;
  };

  if (auto f = attempt(0.0)) return *f;
  for (int e = 10; e >= 4; --e)
    if (auto f = attempt(std::pow(10.0, -e))) return *f;
  throw FactorizationError("chol_with_jitter: not positive definite at jitter 1e-4",
                           kJitterMax);
}

}  // namespace nuggp
