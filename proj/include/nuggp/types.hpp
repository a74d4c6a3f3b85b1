#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace nuggp {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Inclusive range of one input coordinate in natural (unscaled) units.
struct Bounds {
  double lo = 0.0;
  double hi = 1.0;
};

inline bool bounds_valid(const std::vector<Bounds>& bounds) {
  if (bounds.empty()) return false;
  for (const auto& b : bounds)
    if (!(b.lo < b.hi) || !std::isfinite(b.lo) || !std::isfinite(b.hi)) return false;
  return true;
}

/// Thrown when a matrix stays non-positive-definite through the whole jitter
/// ladder. Carries the last jitter value tried.
class FactorizationError : public std::runtime_error {
public:
  FactorizationError(const std::string& what, double jitter)
      : std::runtime_error(what), jitter_tried(jitter) {}
  double jitter_tried;
};

/// Signals statistics that cannot be computed from the given sample
/// (e.g. a paired t-test on zero-variance differences).
class DegenerateInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Kernel hyperparameters: per-dimension squared-lengthscale denominators and
/// the nugget (relative to sigma^2).
struct Hyperparams {
  VectorXd d;               // m entries, all > 0
  double g = 0.0;           // >= 0
  bool isotropic = false;   // forces all d entries equal

  void validate() const;
};

/// Training data in internal form: inputs scaled to the unit cube, responses
/// standardized to mean 0 / sd 1. Keeps enough information to go back to
/// original units.
struct Dataset {
  MatrixXd X;                  // n x m, entries in [0,1]
  std::vector<Bounds> bounds;  // per-dimension original ranges
  VectorXd y;                  // standardized responses
  double y_mean = 0.0;         // standardization constants (original units)
  double y_sd = 1.0;

  Index n() const { return X.rows(); }
  Index m() const { return X.cols(); }

  /// Scales raw_X by `bounds` and standardizes raw_y. For n == 1 or constant
  /// responses the sd constant falls back to 1 so the map stays invertible.
  static Dataset from_raw(const MatrixXd& raw_X, const std::vector<Bounds>& bounds,
                          const VectorXd& raw_y);

  double destandardize(double v) const { return y_mean + y_sd * v; }
  VectorXd destandardize(const VectorXd& v) const {
    return (y_mean + y_sd * v.array()).matrix();
  }
  double standardize(double v) const { return (v - y_mean) / y_sd; }
  VectorXd standardize(const VectorXd& v) const {
    return ((v.array() - y_mean) / y_sd).matrix();
  }

  void validate() const;
};

}  // namespace nuggp
