#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nuggp/inference.hpp"
#include "nuggp/metrics.hpp"
#include "nuggp/simulators.hpp"

namespace nuggp {

struct DesignSpec {
  std::string kind = "uniform";  // uniform | grid | lhs
  Index size = 10;               // points (uniform, lhs) or points per dimension (grid)
};

/// One replicated nugget vs no-nugget experiment. Everything that affects the
/// numbers lives here, so (config, master_seed) pins the output bytes.
struct ExperimentConfig {
  std::string simulator;
  DesignSpec design;
  int n_replicates = 1;
  bool fit_nug = true;
  bool fit_nonug = true;
  McmcSettings mcmc;
  double level = 0.9;
  std::uint64_t master_seed = 0;
  // any of: mse, coverage, mahalanobis, mahalanobis_truth
  std::vector<std::string> metrics = {"mse", "coverage", "mahalanobis"};
  bool isotropic = false;
  int draws_per_sample = 20;
  int workers = 0;  // 0: NUGGP_WORKERS env var, falling back to hardware concurrency
  PriorSpec prior;

  void validate() const;
};

/// Reads the documented JSON schema; unset fields keep their defaults.
/// had_master_seed (optional) reports whether the file pinned a seed.
ExperimentConfig load_experiment_config(const std::string& path,
                                        bool* had_master_seed = nullptr);

struct ModelResult {
  bool fit_failed = false;
  std::string failure;
  double jitter_frac = 0.0;  // stored chain states that needed jitter
  double max_jitter = 0.0;
  int pred_dropped = 0;      // posterior samples dropped during prediction
  bool pred_degraded = false;
  std::map<std::string, double> metric;  // requested metrics; NaN when unavailable
};

struct ReplicateResult {
  int replicate_index = 0;
  std::map<std::string, ModelResult> models;  // keyed "nug" / "nonug"
  double wall_seconds = 0.0;  // informational only; never serialized
};

/// Called (if set) for selected replicates with the grid, truth and pooled
/// prediction so the caller can emit plot-data files.
using PlotSink = std::function<void(int replicate, const std::string& model,
                                    const MatrixXd& grid_raw, const VectorXd& truth,
                                    const VectorXd& mean, const VectorXd& lo,
                                    const VectorXd& hi)>;

/// Runs all replicates (in parallel up to the worker count). Fit failures are
/// recorded per replicate, not fatal; results come back ordered by replicate
/// index and depend only on (config, master_seed).
std::vector<ReplicateResult> run_experiment(const ExperimentConfig& cfg,
                                            const PlotSink& plot_sink = {},
                                            const std::vector<int>& plot_replicates = {});

struct ExperimentSummary {
  std::vector<std::string> models;  // in fit order: nug, nonug
  // model -> metric -> six-number summary over successful replicates
  std::map<std::string, std::map<std::string, SummaryTable>> tables;
  std::map<std::string, int> n_ok;
  std::map<std::string, int> n_jittered;  // replicates with jitter or fit failure
  std::optional<TTest> mse_ttest;         // over replicates where both models succeeded
  bool ttest_degenerate = false;
  int n_pairs = 0;
};

ExperimentSummary summarize_experiment(const ExperimentConfig& cfg,
                                       const std::vector<ReplicateResult>& results);

enum class TableId { fig1, fig2, table1_exp, table1_fried, table2 };

std::optional<TableId> parse_table_id(std::string_view name);
const char* table_id_name(TableId id);

/// Replicate count the table used at scale 1.
int paper_replicates(TableId id);

/// Default scale used when the caller does not pick one (0.1 for fig1, which
/// keeps the 10000-replicate experiment desk-sized; 1.0 elsewhere).
double default_scale(TableId id);

/// The canonical experiment behind each reproduced table.
ExperimentConfig canonical_config(TableId id, double scale, std::uint64_t master_seed);

struct ReproduceResult {
  ExperimentConfig config;
  std::vector<ReplicateResult> results;
  ExperimentSummary summary;
};

ReproduceResult reproduce(TableId id, double scale, std::uint64_t master_seed,
                          int workers = 0, const PlotSink& plot_sink = {},
                          const std::vector<int>& plot_replicates = {});

/// Raw per-replicate CSV; byte-identical across reruns of the same
/// (config, master_seed), so wall time is deliberately not a column.
void write_raw_csv(const std::string& path, const ExperimentConfig& cfg,
                   const std::vector<ReplicateResult>& results);

/// Six-row summary CSV in the table row order Min./1st Qu./Median/Mean/3rd Qu./Max.
void write_summary_csv(const std::string& path, const ExperimentSummary& summary);

std::string render_summary(const ExperimentConfig& cfg, const ExperimentSummary& summary);

/// Metric evaluation grid for a simulator: 1000 equispaced points in 1-d,
/// a 40x40 lattice in 2-d, 2000 Latin hypercube points in higher dimensions.
MatrixXd metric_grid(const SimulatorSpec& sim, std::uint64_t master_seed);

}  // namespace nuggp
