#include "nuggp/types.hpp"

#include <cmath>

#include "nuggp/kernels.hpp"

namespace nuggp {

void Hyperparams::validate() const {
  if (d.size() < 1) throw std::invalid_argument("Hyperparams: d must be non-empty");
  for (Index l = 0; l < d.size(); ++l)
    if (!(d(l) > 0.0) || !std::isfinite(d(l)))
      throw std::invalid_argument("Hyperparams: d entries must be positive and finite");
  if (!(g >= 0.0) || !std::isfinite(g))
    throw std::invalid_argument("Hyperparams: g must be nonnegative and finite");
  if (isotropic)
    for (Index l = 1; l < d.size(); ++l)
      if (d(l) != d(0))
        throw std::invalid_argument("Hyperparams: isotropic requires equal d entries");
}

Dataset Dataset::from_raw(const MatrixXd& raw_X, const std::vector<Bounds>& bounds,
                          const VectorXd& raw_y) {
  if (raw_X.rows() != raw_y.size())
    throw std::invalid_argument("Dataset: X and y must have matching lengths");
  if (raw_X.rows() < 1) throw std::invalid_argument("Dataset: need at least one point");
  Dataset ds;
  ds.X = scale_inputs(raw_X, bounds);
  ds.bounds = bounds;
  const Index n = raw_y.size();
  ds.y_mean = raw_y.mean();
  double sd = 1.0;
  if (n >= 2) {
    const double ss = (raw_y.array() - ds.y_mean).square().sum();
    sd = std::sqrt(ss / static_cast<double>(n - 1));
  }
  ds.y_sd = sd > 0.0 ? sd : 1.0;
  ds.y = ((raw_y.array() - ds.y_mean) / ds.y_sd).matrix();
  return ds;
}

void Dataset::validate() const {
  if (X.rows() != y.size()) throw std::invalid_argument("Dataset: X/y length mismatch");
  if (!bounds_valid(bounds) || static_cast<Index>(bounds.size()) != X.cols())
    throw std::invalid_argument("Dataset: invalid bounds");
  if ((X.array() < 0.0).any() || (X.array() > 1.0).any())
    throw std::invalid_argument("Dataset: scaled inputs must lie in [0,1]");
  if (!(y_sd > 0.0) || !std::isfinite(y_sd) || !std::isfinite(y_mean))
    throw std::invalid_argument("Dataset: invalid standardization constants");
}

}  // namespace nuggp
