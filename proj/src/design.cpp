#include "nuggp/design.hpp"

#include <numeric>
#include <vector>

#include "nuggp/rng.hpp"

namespace nuggp {

namespace {
void check_domain(Index m, const std::vector<Bounds>& domain, const char* who) {
  if (!bounds_valid(domain) || static_cast<Index>(domain.size()) != m)
    throw std::invalid_argument(std::string(who) + ": invalid domain");
}
}  // namespace

MatrixXd uniform_design(Index n, Index m, const std::vector<Bounds>& domain,
                        std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("uniform_design: need n, m >= 1");
  check_domain(m, domain, "uniform_design");
  SplitMix rng(seed);
  MatrixXd X(n, m);
  for (Index i = 0; i < n; ++i)
    for (Index l = 0; l < m; ++l) {
      const auto& b = domain[static_cast<std::size_t>(l)];
      X(i, l) = rng.uniform(b.lo, b.hi);
    }
  return X;
}

MatrixXd grid_design(Index n_per_dim, const std::vector<Bounds>& domain) {
  if (n_per_dim < 1) throw std::invalid_argument("grid_design: need n_per_dim >= 1");
  const Index m = static_cast<Index>(domain.size());
  check_domain(m, domain, "grid_design");
  Index total = 1;
  for (Index l = 0; l < m; ++l) {
    if (total > (1 << 24) / n_per_dim)
      throw std::invalid_argument("grid_design: lattice too large");
    total *= n_per_dim;
  }
  MatrixXd X(total, m);
  for (Index i = 0; i < total; ++i) {
    Index rest = i;
    for (Index l = 0; l < m; ++l) {
      const Index idx = rest % n_per_dim;
      rest /= n_per_dim;
      const auto& b = domain[static_cast<std::size_t>(l)];
      X(i, l) = n_per_dim == 1
                    ? 0.5 * (b.lo + b.hi)
                    : b.lo + (b.hi - b.lo) * static_cast<double>(idx) /
                                 static_cast<double>(n_per_dim - 1);
    }
  }
  return X;
}

MatrixXd lhs_design(Index n, Index m, const std::vector<Bounds>& domain,
                    std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("lhs_design: need n, m >= 1");
  check_domain(m, domain, "lhs_design");
  SplitMix rng(seed);
  MatrixXd X(n, m);
  std::vector<Index> strata(static_cast<std::size_t>(n));
  for (Index l = 0; l < m; ++l) {
    std::iota(strata.begin(), strata.end(), Index{0});
    // Fisher-Yates with the shared stream
    for (Index i = n - 1; i > 0; --i) {
      const auto j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(i + 1)));
      std::swap(strata[static_cast<std::size_t>(i)], strata[static_cast<std::size_t>(j)]);
    }
    const auto& b = domain[static_cast<std::size_t>(l)];
    for (Index i = 0; i < n; ++i) {
      const double u = (static_cast<double>(strata[static_cast<std::size_t>(i)]) +
                        rng.u01()) /
                       static_cast<double>(n);
      X(i, l) = b.lo + (b.hi - b.lo) * u;
    }
  }
  return X;
}

}  // namespace nuggp
