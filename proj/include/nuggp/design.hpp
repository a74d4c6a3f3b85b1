#pragma once

#include <cstdint>

#include "nuggp/types.hpp"

namespace nuggp {

/// i.i.d. per-coordinate uniforms over the domain; deterministic in the seed.
MatrixXd uniform_design(Index n, Index m, const std::vector<Bounds>& domain,
                        std::uint64_t seed);

/// Full equispaced lattice including the endpoints, n_per_dim^m rows; the
/// first coordinate varies fastest. n_per_dim = 1 yields the midpoint.
MatrixXd grid_design(Index n_per_dim, const std::vector<Bounds>& domain);

/// Latin hypercube: one jittered point per 1/n stratum per dimension, strata
/// independently permuted per dimension; deterministic in the seed.
MatrixXd lhs_design(Index n, Index m, const std::vector<Bounds>& domain,
                    std::uint64_t seed);

}  // namespace nuggp
