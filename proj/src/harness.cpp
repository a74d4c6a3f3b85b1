#include "nuggp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nuggp/csv.hpp"
#include "nuggp/design.hpp"

namespace nuggp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// derive_seed stream ids
enum Stream : std::uint64_t {
  kStreamDesign = 1,
  kStreamChain = 2,
  kStreamPredict = 3,
  kStreamGrid = 10,
  kStreamMahSubset = 11,
};

bool has_metric(const ExperimentConfig& cfg, std::string_view name) {
  return std::find(cfg.metrics.begin(), cfg.metrics.end(), name) != cfg.metrics.end();
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NUGGP_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

VectorXd evaluate_rows(const SimulatorSpec& sim,
                       const std::function<double(const VectorXd&)>& fn,
                       const MatrixXd& X) {
  VectorXd y(X.rows());
  for (Index i = 0; i < X.rows(); ++i) y(i) = fn(VectorXd(X.row(i).transpose()));
  (void)sim;
  return y;
}

// Everything shared across replicates: the metric grid, truth values and the
// Mahalanobis subset. Computed once, read-only afterwards.
struct ExperimentPlan {
  const SimulatorSpec* sim = nullptr;
  MatrixXd grid_raw;
  MatrixXd grid_scaled;
  VectorXd truth;        // simulator response on the grid
  VectorXd truth_f;      // reference curve on the grid (mahalanobis_truth)
  MatrixXd sub_scaled;   // Mahalanobis subset (capped at 300 points)
  VectorXd sub_truth;
  VectorXd sub_truth_f;
  bool want_mse = false, want_cov = false, want_mah = false, want_mah_truth = false;
};

ExperimentPlan make_plan(const ExperimentConfig& cfg) {
  ExperimentPlan plan;
  plan.sim = find_simulator(cfg.simulator);
  if (!plan.sim)
    throw std::invalid_argument("unknown simulator '" + cfg.simulator + "'");
  plan.want_mse = has_metric(cfg, "mse");
  plan.want_cov = has_metric(cfg, "coverage");
  plan.want_mah = has_metric(cfg, "mahalanobis");
  plan.want_mah_truth = has_metric(cfg, "mahalanobis_truth");

  plan.grid_raw = metric_grid(*plan.sim, cfg.master_seed);
  plan.grid_scaled = scale_unchecked(plan.grid_raw, plan.sim->domain);
  plan.truth = evaluate_rows(*plan.sim, plan.sim->eval, plan.grid_raw);
  if (plan.want_mah_truth)
    plan.truth_f = evaluate_rows(*plan.sim, plan.sim->truth, plan.grid_raw);

  if (plan.want_mah || plan.want_mah_truth) {
    const Index total = plan.grid_raw.rows();
    std::vector<Index> idx(static_cast<std::size_t>(total));
    for (Index i = 0; i < total; ++i) idx[static_cast<std::size_t>(i)] = i;
    constexpr Index kCap = 300;
    if (total > kCap) {
      SplitMix rng(derive_seed(cfg.master_seed, {kStreamMahSubset}));
      for (Index i = 0; i < kCap; ++i) {
        const auto j =
            i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(total - i)));
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      }
      idx.resize(kCap);
      std::sort(idx.begin(), idx.end());
    }
    const auto p = static_cast<Index>(idx.size());
    plan.sub_scaled.resize(p, plan.grid_scaled.cols());
    plan.sub_truth.resize(p);
    if (plan.want_mah_truth) plan.sub_truth_f.resize(p);
    for (Index i = 0; i < p; ++i) {
      plan.sub_scaled.row(i) = plan.grid_scaled.row(idx[static_cast<std::size_t>(i)]);
      plan.sub_truth(i) = plan.truth(idx[static_cast<std::size_t>(i)]);
      if (plan.want_mah_truth)
        plan.sub_truth_f(i) = plan.truth_f(idx[static_cast<std::size_t>(i)]);
    }
  }
  return plan;
}

MatrixXd draw_design(const ExperimentConfig& cfg, const SimulatorSpec& sim,
                     std::uint64_t seed) {
  if (cfg.design.kind == "uniform")
    return uniform_design(cfg.design.size, sim.dims, sim.domain, seed);
  if (cfg.design.kind == "grid") return grid_design(cfg.design.size, sim.domain);
  if (cfg.design.kind == "lhs")
    return lhs_design(cfg.design.size, sim.dims, sim.domain, seed);
  throw std::invalid_argument("unknown design kind '" + cfg.design.kind + "'");
}

ModelResult fit_and_score(const ExperimentConfig& cfg, const ExperimentPlan& plan,
                          const Dataset& data, bool fix_g_zero, std::uint64_t chain_seed,
                          std::uint64_t pred_seed, bool want_plot, int replicate,
                          const std::string& model_name, const PlotSink& plot_sink) {
  ModelResult mr;
  PriorSpec prior = cfg.prior;
  prior.fix_g_zero = fix_g_zero;

  Chain chain;
  try {
    chain = run_chain(data, prior, cfg.mcmc, chain_seed, cfg.isotropic);
  } catch (const McmcInitError& e) {
    mr.fit_failed = true;
    mr.failure = e.what();
    return mr;
  }
  if (chain.samples.empty()) {
    mr.fit_failed = true;
    mr.failure = "chain stored no finite states";
    return mr;
  }
  int n_jittered = 0;
  for (const auto& s : chain.samples) {
    if (s.jitter > 0.0) ++n_jittered;
    mr.max_jitter = std::max(mr.max_jitter, s.jitter);
  }
  mr.jitter_frac = static_cast<double>(n_jittered) / static_cast<double>(chain.samples.size());

  const bool want_intervals = plan.want_cov || want_plot;
  try {
    SplitMix rng(pred_seed);
    const PooledPrediction pooled =
        posterior_predict(data, chain, plan.grid_scaled, cfg.level, cfg.draws_per_sample,
                          /*include_noise=*/true, rng, /*want_joint=*/false,
                          want_intervals);
    mr.pred_dropped = pooled.n_dropped;
    mr.pred_degraded = pooled.degraded;
    if (plan.want_mse) mr.metric["mse"] = mse(pooled.mean, plan.truth);
    if (plan.want_cov)
      mr.metric["coverage"] = pointwise_coverage(pooled.lo, pooled.hi, plan.truth);
    if (want_plot && plot_sink)
      plot_sink(replicate, model_name, plan.grid_raw, plan.truth, pooled.mean,
                want_intervals ? pooled.lo : VectorXd(),
                want_intervals ? pooled.hi : VectorXd());
  } catch (const FactorizationError& e) {
    mr.fit_failed = true;
    mr.failure = std::string("prediction failed: ") + e.what();
    return mr;
  }

  if (plan.want_mah || plan.want_mah_truth) {
    // Mahalanobis per stored posterior sample, then averaged.
    const VectorXd t_std = data.standardize(plan.sub_truth);
    const VectorXd tf_std =
        plan.want_mah_truth ? VectorXd(data.standardize(plan.sub_truth_f)) : VectorXd();
    double sum = 0.0, sum_f = 0.0;
    int used = 0;
    for (std::size_t s = 0; s < chain.samples.size(); ++s) {
      try {
        const PredictiveDist pd =
            predict(data, chain.hyperparams(s), plan.sub_scaled, chain.prior.a,
                    chain.prior.b, /*include_noise=*/true, /*want_joint=*/true);
        if (plan.want_mah)
          sum += mahalanobis_distance(t_std, pd.loc, *pd.joint_scale, pd.df);
        if (plan.want_mah_truth)
          sum_f += mahalanobis_distance(tf_std, pd.loc, *pd.joint_scale, pd.df);
        ++used;
      } catch (const FactorizationError&) {
        // sample dropped from the average
      }
    }
    if (plan.want_mah) mr.metric["mahalanobis"] = used > 0 ? sum / used : kNaN;
    if (plan.want_mah_truth)
      mr.metric["mahalanobis_truth"] = used > 0 ? sum_f / used : kNaN;
  }
  return mr;
}

ReplicateResult run_replicate(const ExperimentConfig& cfg, const ExperimentPlan& plan,
                              int replicate, bool want_plot, const PlotSink& plot_sink) {
  const auto t0 = std::chrono::steady_clock::now();
  ReplicateResult rr;
  rr.replicate_index = replicate;

  const auto rep = static_cast<std::uint64_t>(replicate);
  const MatrixXd design_raw =
      draw_design(cfg, *plan.sim, derive_seed(cfg.master_seed, {kStreamDesign, rep}));
  const VectorXd y_raw = evaluate_rows(*plan.sim, plan.sim->eval, design_raw);
  const Dataset data = Dataset::from_raw(design_raw, plan.sim->domain, y_raw);

  struct ModelPlan {
    const char* name;
    bool fix_g_zero;
    std::uint64_t index;
    bool enabled;
  };
  const ModelPlan models[] = {{"nug", false, 0, cfg.fit_nug},
                              {"nonug", true, 1, cfg.fit_nonug}};
  for (const auto& mp : models) {
    if (!mp.enabled) continue;
    rr.models[mp.name] = fit_and_score(
        cfg, plan, data, mp.fix_g_zero,
        derive_seed(cfg.master_seed, {kStreamChain, rep, mp.index}),
        derive_seed(cfg.master_seed, {kStreamPredict, rep, mp.index}), want_plot,
        replicate, mp.name, plot_sink);
  }
  rr.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rr;
}

std::vector<std::string> model_names(const ExperimentConfig& cfg) {
  std::vector<std::string> out;
  if (cfg.fit_nug) out.emplace_back("nug");
  if (cfg.fit_nonug) out.emplace_back("nonug");
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!find_simulator(simulator))
    throw std::invalid_argument("unknown simulator '" + simulator + "'");
  if (design.kind != "uniform" && design.kind != "grid" && design.kind != "lhs")
    throw std::invalid_argument("unknown design kind '" + design.kind + "'");
  if (design.size < 1) throw std::invalid_argument("design size must be >= 1");
  if (n_replicates < 1) throw std::invalid_argument("n_replicates must be >= 1");
  if (!fit_nug && !fit_nonug) throw std::invalid_argument("no models requested");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must be in (0,1)");
  if (draws_per_sample < 1) throw std::invalid_argument("draws_per_sample must be >= 1");
  if (metrics.empty()) throw std::invalid_argument("no metrics requested");
  for (const auto& m : metrics)
    if (m != "mse" && m != "coverage" && m != "mahalanobis" && m != "mahalanobis_truth")
      throw std::invalid_argument("unknown metric '" + m + "'");
  prior.validate();
  if (!(mcmc.n_iter > mcmc.burn) || mcmc.burn < 0 || mcmc.thin < 1)
    throw std::invalid_argument("invalid mcmc settings");
}

ExperimentConfig load_experiment_config(const std::string& path, bool* had_master_seed) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config " + path + " is not valid JSON: " + e.what());
  }
  if (had_master_seed) *had_master_seed = j.contains("master_seed");
  ExperimentConfig cfg;
  cfg.simulator = j.at("simulator").get<std::string>();
  if (j.contains("design")) {
    cfg.design.kind = j["design"].value("kind", cfg.design.kind);
    cfg.design.size = j["design"].value("size", static_cast<int>(cfg.design.size));
  }
  cfg.n_replicates = j.value("n_replicates", cfg.n_replicates);
  if (j.contains("models")) {
    cfg.fit_nug = cfg.fit_nonug = false;
    for (const auto& m : j["models"]) {
      if (m == "nug")
        cfg.fit_nug = true;
      else if (m == "nonug")
        cfg.fit_nonug = true;
      else
        throw std::invalid_argument("unknown model '" + m.get<std::string>() + "'");
    }
  }
  if (j.contains("mcmc")) {
    const auto& m = j["mcmc"];
    cfg.mcmc.n_iter = m.value("n_iter", cfg.mcmc.n_iter);
    cfg.mcmc.burn = m.value("burn", cfg.mcmc.burn);
    cfg.mcmc.thin = m.value("thin", cfg.mcmc.thin);
    cfg.mcmc.proposal_sd = m.value("proposal_sd", cfg.mcmc.proposal_sd);
  }
  cfg.level = j.value("level", cfg.level);
  cfg.master_seed = j.value("master_seed", cfg.master_seed);
  if (j.contains("metrics")) {
    cfg.metrics.clear();
    for (const auto& m : j["metrics"]) cfg.metrics.push_back(m.get<std::string>());
  }
  cfg.isotropic = j.value("isotropic", cfg.isotropic);
  cfg.draws_per_sample = j.value("draws_per_sample", cfg.draws_per_sample);
  cfg.workers = j.value("workers", cfg.workers);
  if (j.contains("prior")) {
    const auto& p = j["prior"];
    cfg.prior.d_shape = p.value("d_shape", cfg.prior.d_shape);
    cfg.prior.d_rate = p.value("d_rate", cfg.prior.d_rate);
    cfg.prior.g_shape = p.value("g_shape", cfg.prior.g_shape);
    cfg.prior.g_rate = p.value("g_rate", cfg.prior.g_rate);
    cfg.prior.a = p.value("a", cfg.prior.a);
    cfg.prior.b = p.value("b", cfg.prior.b);
  }
  cfg.validate();
  return cfg;
}

MatrixXd metric_grid(const SimulatorSpec& sim, std::uint64_t master_seed) {
  if (sim.dims == 1) return grid_design(1000, sim.domain);
  if (sim.dims == 2) return grid_design(40, sim.domain);
  return lhs_design(2000, sim.dims, sim.domain, derive_seed(master_seed, {kStreamGrid}));
}

std::vector<ReplicateResult> run_experiment(const ExperimentConfig& cfg,
                                            const PlotSink& plot_sink,
                                            const std::vector<int>& plot_replicates) {
  cfg.validate();
  const ExperimentPlan plan = make_plan(cfg);
  std::vector<ReplicateResult> results(static_cast<std::size_t>(cfg.n_replicates));

  auto wants_plot = [&](int r) {
    return plot_sink &&
           std::find(plot_replicates.begin(), plot_replicates.end(), r) !=
               plot_replicates.end();
  };

  const int workers = std::min(resolve_workers(cfg.workers), cfg.n_replicates);
  std::atomic<int> next{0};
  std::mutex sink_mutex;
  PlotSink locked_sink;
  if (plot_sink)
    locked_sink = [&](int rep, const std::string& model, const MatrixXd& grid,
                      const VectorXd& truth, const VectorXd& mean, const VectorXd& lo,
                      const VectorXd& hi) {
      std::lock_guard<std::mutex> lock(sink_mutex);
      plot_sink(rep, model, grid, truth, mean, lo, hi);
    };

  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= cfg.n_replicates) return;
      try {
        results[static_cast<std::size_t>(r)] =
            run_replicate(cfg, plan, r, wants_plot(r), locked_sink);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // An experiment where some model never succeeded is reported as a failure.
  for (const auto& name : model_names(cfg)) {
    bool any_ok = false;
    for (const auto& rr : results)
      if (rr.models.count(name) && !rr.models.at(name).fit_failed) any_ok = true;
    if (!any_ok)
      throw std::runtime_error("experiment: every replicate failed for model " + name);
  }
  return results;
}

ExperimentSummary summarize_experiment(const ExperimentConfig& cfg,
                                       const std::vector<ReplicateResult>& results) {
  if (results.empty()) throw std::invalid_argument("summarize_experiment: no results");
  ExperimentSummary summary;
  summary.models = model_names(cfg);

  for (const auto& name : summary.models) {
    int ok = 0, jittered = 0;
    std::map<std::string, std::vector<double>> values;
    for (const auto& rr : results) {
      const auto it = rr.models.find(name);
      if (it == rr.models.end()) continue;
      const ModelResult& mr = it->second;
      if (mr.fit_failed || mr.jitter_frac > 0.0) ++jittered;
      if (mr.fit_failed) continue;
      ++ok;
      for (const auto& [metric, value] : mr.metric)
        if (std::isfinite(value)) values[metric].push_back(value);
    }
    summary.n_ok[name] = ok;
    summary.n_jittered[name] = jittered;
    if (ok == 0)
      throw std::invalid_argument("summarize_experiment: no successful replicate for " +
                                  name);
    for (auto& [metric, vals] : values)
      summary.tables[name][metric] = SummaryTable::of(std::move(vals));
  }

  if (has_metric(cfg, "mse") && cfg.fit_nug && cfg.fit_nonug) {
    std::vector<double> a, b;
    for (const auto& rr : results) {
      const auto in = rr.models.find("nug");
      const auto io = rr.models.find("nonug");
      if (in == rr.models.end() || io == rr.models.end()) continue;
      if (in->second.fit_failed || io->second.fit_failed) continue;
      const auto ma = in->second.metric.find("mse");
      const auto mb = io->second.metric.find("mse");
      if (ma == in->second.metric.end() || mb == io->second.metric.end()) continue;
      if (!std::isfinite(ma->second) || !std::isfinite(mb->second)) continue;
      a.push_back(ma->second);
      b.push_back(mb->second);
    }
    summary.n_pairs = static_cast<int>(a.size());
    if (a.size() >= 2) {
      try {
        summary.mse_ttest =
            paired_t_test(Eigen::Map<const VectorXd>(a.data(), static_cast<Index>(a.size())),
                          Eigen::Map<const VectorXd>(b.data(), static_cast<Index>(b.size())));
      } catch (const DegenerateInput&) {
        summary.ttest_degenerate = true;
      }
    }
  }
  return summary;
}

std::optional<TableId> parse_table_id(std::string_view name) {
  if (name == "fig1") return TableId::fig1;
  if (name == "fig2") return TableId::fig2;
  if (name == "table1_exp") return TableId::table1_exp;
  if (name == "table1_fried") return TableId::table1_fried;
  if (name == "table2") return TableId::table2;
  return std::nullopt;
}

const char* table_id_name(TableId id) {
  switch (id) {
    case TableId::fig1: return "fig1";
    case TableId::fig2: return "fig2";
    case TableId::table1_exp: return "table1_exp";
    case TableId::table1_fried: return "table1_fried";
    case TableId::table2: return "table2";
  }
  return "?";
}

int paper_replicates(TableId id) { return id == TableId::fig1 ? 10000 : 100; }

double default_scale(TableId id) { return id == TableId::fig1 ? 0.1 : 1.0; }

ExperimentConfig canonical_config(TableId id, double scale, std::uint64_t master_seed) {
  if (!(scale > 0.0 && scale <= 1.0))
    throw std::invalid_argument("reproduce: scale must be in (0,1]");
  ExperimentConfig cfg;
  cfg.master_seed = master_seed;
  cfg.n_replicates =
      static_cast<int>(std::ceil(scale * static_cast<double>(paper_replicates(id))));
  switch (id) {
    case TableId::fig1:
      cfg.simulator = "gramacy1d";
      cfg.design = {"uniform", 20};
      cfg.metrics = {"mse"};
      break;
    case TableId::fig2:
      cfg.simulator = "cauchysine";
      cfg.design = {"uniform", 10};
      cfg.metrics = {"coverage", "mahalanobis"};
      break;
    case TableId::table1_exp:
      cfg.simulator = "exp2d";
      cfg.design = {"uniform", 20};
      cfg.metrics = {"coverage", "mahalanobis"};
      break;
    case TableId::table1_fried:
      cfg.simulator = "friedman5";
      cfg.design = {"uniform", 25};
      cfg.metrics = {"coverage", "mahalanobis"};
      cfg.isotropic = true;
      break;
    case TableId::table2:
      cfg.simulator = "fsim";
      cfg.design = {"uniform", 20};
      cfg.metrics = {"coverage", "mahalanobis", "mahalanobis_truth"};
      break;
  }
  return cfg;
}

ReproduceResult reproduce(TableId id, double scale, std::uint64_t master_seed, int workers,
                          const PlotSink& plot_sink,
                          const std::vector<int>& plot_replicates) {
  ReproduceResult out;
  out.config = canonical_config(id, scale, master_seed);
  out.config.workers = workers;
  out.results = run_experiment(out.config, plot_sink, plot_replicates);
  out.summary = summarize_experiment(out.config, out.results);
  return out;
}

void write_raw_csv(const std::string& path, const ExperimentConfig& cfg,
                   const std::vector<ReplicateResult>& results) {
  std::vector<std::string> header{"replicate"};
  const auto names = model_names(cfg);
  for (const auto& name : names) {
    header.push_back(name + "_fit_failed");
    header.push_back(name + "_jitter_frac");
    header.push_back(name + "_max_jitter");
    header.push_back(name + "_pred_dropped");
    for (const auto& metric : cfg.metrics) header.push_back(name + "_" + metric);
  }
  MatrixXd values(static_cast<Index>(results.size()), static_cast<Index>(header.size()));
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto r = static_cast<Index>(i);
    Index c = 0;
    values(r, c++) = results[i].replicate_index;
    for (const auto& name : names) {
      const auto it = results[i].models.find(name);
      if (it == results[i].models.end()) {
        for (std::size_t k = 0; k < 4 + cfg.metrics.size(); ++k) values(r, c++) = kNaN;
        continue;
      }
      const ModelResult& mr = it->second;
      values(r, c++) = mr.fit_failed ? 1.0 : 0.0;
      values(r, c++) = mr.jitter_frac;
      values(r, c++) = mr.max_jitter;
      values(r, c++) = mr.pred_dropped;
      for (const auto& metric : cfg.metrics) {
        const auto m = mr.metric.find(metric);
        values(r, c++) = (m != mr.metric.end() && !mr.fit_failed) ? m->second : kNaN;
      }
    }
  }
  write_csv(path, header, values);
}

void write_summary_csv(const std::string& path, const ExperimentSummary& summary) {
  std::vector<std::string> header{"stat"};
  std::vector<std::pair<std::string, std::string>> columns;  // (model, metric)
  for (const auto& model : summary.models)
    if (summary.tables.count(model))
      for (const auto& [metric, table] : summary.tables.at(model)) {
        header.push_back(model + "_" + metric);
        columns.emplace_back(model, metric);
      }

  static const char* stat_names[] = {"Min.", "1st Qu.", "Median", "Mean", "3rd Qu.", "Max."};
  std::ofstream out(path);
  if (!out) throw CsvError("cannot open " + path + " for writing", 0);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (int s = 0; s < 6; ++s) {
    out << stat_names[s];
    for (const auto& [model, metric] : columns) {
      const SummaryTable& t = summary.tables.at(model).at(metric);
      const double v = s == 0   ? t.min
                       : s == 1 ? t.q1
                       : s == 2 ? t.median
                       : s == 3 ? t.mean
                       : s == 4 ? t.q3
                                : t.max;
      out << "," << format_double(v);
    }
    out << "\n";
  }
}

std::string render_summary(const ExperimentConfig& cfg, const ExperimentSummary& summary) {
  std::ostringstream os;
  os << "simulator " << cfg.simulator << ", " << cfg.design.kind << " design of size "
     << cfg.design.size << ", " << cfg.n_replicates << " replicates, master seed "
     << cfg.master_seed << "\n";
  for (const auto& model : summary.models)
    os << "  " << model << ": " << summary.n_ok.at(model) << "/" << cfg.n_replicates
       << " fits ok, " << summary.n_jittered.at(model) << " with jitter or failure\n";
  os << "\n";

  // union of metrics, in config order
  for (const auto& metric : cfg.metrics) {
    bool present = false;
    for (const auto& model : summary.models)
      if (summary.tables.count(model) && summary.tables.at(model).count(metric))
        present = true;
    if (!present) continue;
    os << metric;
    for (const auto& model : summary.models) os << "\t" << model;
    os << "\n";
    static const char* stat_names[] = {"Min.",   "1st Qu.", "Median",
                                       "Mean",   "3rd Qu.", "Max."};
    for (int s = 0; s < 6; ++s) {
      os << stat_names[s];
      for (const auto& model : summary.models) {
        os << "\t";
        if (summary.tables.count(model) && summary.tables.at(model).count(metric)) {
          const SummaryTable& t = summary.tables.at(model).at(metric);
          const double v = s == 0   ? t.min
                           : s == 1 ? t.q1
                           : s == 2 ? t.median
                           : s == 3 ? t.mean
                           : s == 4 ? t.q3
                                    : t.max;
          char buf[32];
          std::snprintf(buf, sizeof(buf), "%.4f", v);
          os << buf;
        } else {
          os << "-";
        }
      }
      os << "\n";
    }
    os << "\n";
  }
  if (summary.mse_ttest) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "paired t-test on mse (nug - nonug): t = %.4f, p = %.4g, %d pairs\n",
                  summary.mse_ttest->t, summary.mse_ttest->p_two_sided, summary.n_pairs);
    os << buf;
  } else if (summary.ttest_degenerate) {
    os << "paired t-test on mse: degenerate (zero-variance differences)\n";
  }
  return os.str();
}

}  // namespace nuggp
