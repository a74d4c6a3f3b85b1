#pragma once

#include <string>

#include "nuggp/inference.hpp"

namespace nuggp {

/// A fitted model: the training data plus the posterior chain (which bundles
/// the prior, MCMC settings and seed). One self-describing JSON file.
struct FittedModel {
  Dataset data;
  Chain chain;
};

void save_model(const std::string& path, const FittedModel& model);
FittedModel load_model(const std::string& path);

/// Chain as a flat CSV table, one row per stored sample: d_1..d_m, g, log_post.
void write_chain_csv(const std::string& path, const Chain& chain);

}  // namespace nuggp
