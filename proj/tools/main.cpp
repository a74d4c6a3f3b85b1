// nuggp command-line interface: fit / predict / simulate / design /
// experiment / reproduce. Exit codes: 0 success, 1 configuration or input
// error, 2 numerical failure.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nuggp/csv.hpp"
#include "nuggp/design.hpp"
#include "nuggp/harness.hpp"
#include "nuggp/model_io.hpp"

namespace fs = std::filesystem;
using namespace nuggp;

namespace {

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, const char* what) {
  if (seed) return *seed;
  const std::uint64_t s = entropy_seed();
  std::cout << what << " seed: " << s << "\n";
  return s;
}

std::vector<Bounds> parse_bounds(const std::string& spec) {
  std::vector<Bounds> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("bounds must look like lo:hi[,lo:hi...]");
    out.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
  }
  if (!bounds_valid(out)) throw std::invalid_argument("invalid bounds: " + spec);
  return out;
}

std::string median_string(const Chain& chain) {
  std::ostringstream os;
  for (Index l = 0; l < chain.m; ++l) {
    std::vector<double> v;
    v.reserve(chain.samples.size());
    for (const auto& s : chain.samples) v.push_back(s.d(l));
    os << "d_" << (l + 1) << " = " << quantile_linear(std::move(v), 0.5) << "  ";
  }
  std::vector<double> g;
  g.reserve(chain.samples.size());
  for (const auto& s : chain.samples) g.push_back(s.g);
  os << "g = " << quantile_linear(std::move(g), 0.5);
  return os.str();
}

int cmd_fit(const std::string& data_csv, const std::string& out_model,
            const std::string& chain_csv, const std::string& bounds_spec, PriorSpec prior,
            McmcSettings mcmc, bool no_nugget, bool isotropic,
            const std::optional<std::uint64_t>& seed_opt) {
  const CsvTable table = read_csv(data_csv);
  if (table.values.cols() < 2)
    throw std::invalid_argument(data_csv + ": need at least one input column plus the response");
  if (table.values.rows() < 1) throw std::invalid_argument(data_csv + ": no data rows");
  const Index m = table.values.cols() - 1;
  const MatrixXd raw_X = table.values.leftCols(m);
  const VectorXd raw_y = table.values.col(m);

  std::vector<Bounds> bounds;
  if (!bounds_spec.empty()) {
    bounds = parse_bounds(bounds_spec);
    if (static_cast<Index>(bounds.size()) != m)
      throw std::invalid_argument("--bounds must give one lo:hi pair per input column");
  } else {
    for (Index l = 0; l < m; ++l)
      bounds.push_back({raw_X.col(l).minCoeff(), raw_X.col(l).maxCoeff()});
    if (!bounds_valid(bounds))
      throw std::invalid_argument(
          "a constant input column gives degenerate bounds; pass --bounds explicitly");
  }

  prior.fix_g_zero = no_nugget;
  const Dataset data = Dataset::from_raw(raw_X, bounds, raw_y);
  const std::uint64_t seed = resolve_seed(seed_opt, "fit");
  const Chain chain = run_chain(data, prior, mcmc, seed, isotropic);

  std::cout << "stored " << chain.samples.size() << " samples; accept rates: d = "
            << chain.accept_d << ", g = " << chain.accept_g << "\n";
  std::cout << "posterior medians: " << median_string(chain) << "\n";

  int n_jittered = 0;
  double max_jitter = 0.0;
  for (const auto& s : chain.samples) {
    if (s.jitter > 0.0) ++n_jittered;
    max_jitter = std::max(max_jitter, s.jitter);
  }
  if (n_jittered > 0)
    std::cerr << "warning: " << (no_nugget ? "zero-nugget" : "") << " fit relied on numerical jitter in "
              << n_jittered << "/" << chain.samples.size() << " stored states (max jitter "
              << max_jitter << ")\n";

  save_model(out_model, {data, chain});
  std::cout << "wrote model to " << out_model << "\n";
  if (!chain_csv.empty()) {
    write_chain_csv(chain_csv, chain);
    std::cout << "wrote chain to " << chain_csv << "\n";
  }
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& test_csv, int grid_n,
                double level, bool include_noise, int draws, const std::string& out_csv,
                const std::optional<std::uint64_t>& seed_opt) {
  const FittedModel model = load_model(model_path);
  const Index m = model.data.m();

  MatrixXd test_raw;
  if (!test_csv.empty()) {
    const CsvTable table = read_csv(test_csv);
    if (table.values.cols() < m)
      throw std::invalid_argument(test_csv + ": expected at least " + std::to_string(m) +
                                  " input columns");
    test_raw = table.values.leftCols(m);
  } else if (grid_n > 0) {
    test_raw = grid_design(grid_n, model.data.bounds);
  } else {
    throw std::invalid_argument("predict: give --test or --grid");
  }

  bool outside = false;
  for (Index l = 0; l < m && !outside; ++l) {
    const auto& b = model.data.bounds[static_cast<std::size_t>(l)];
    for (Index i = 0; i < test_raw.rows(); ++i)
      if (test_raw(i, l) < b.lo || test_raw(i, l) > b.hi) {
        outside = true;
        break;
      }
  }
  if (outside)
    std::cerr << "warning: test inputs outside the training bounds; extrapolating\n";

  const MatrixXd Xstar = scale_unchecked(test_raw, model.data.bounds);
  SplitMix rng(resolve_seed(seed_opt, "predict"));
  const PooledPrediction pooled = posterior_predict(model.data, model.chain, Xstar, level,
                                                    draws, include_noise, rng);

  std::vector<std::string> header;
  for (Index l = 0; l < m; ++l) header.push_back("x" + std::to_string(l + 1));
  header.emplace_back("mean");
  header.emplace_back("lo");
  header.emplace_back("hi");
  MatrixXd values(test_raw.rows(), m + 3);
  values.leftCols(m) = test_raw;
  values.col(m) = pooled.mean;
  values.col(m + 1) = pooled.lo;
  values.col(m + 2) = pooled.hi;
  write_csv(out_csv, header, values);
  if (pooled.degraded)
    std::cerr << "warning: " << pooled.n_dropped
              << " posterior samples dropped during prediction (degraded fit)\n";
  std::cout << "wrote " << values.rows() << " predictions to " << out_csv << "\n";
  return 0;
}

int cmd_simulate(const std::string& name, const std::string& design_csv,
                 const std::string& design_kind, int n, const std::string& domain_spec,
                 bool emit_truth, const std::string& out_csv,
                 const std::optional<std::uint64_t>& seed_opt) {
  const SimulatorSpec* sim = find_simulator(name);
  if (!sim) {
    std::string names;
    for (const auto& s : simulator_catalog()) names += " " + s.name;
    throw std::invalid_argument("unknown simulator '" + name + "'; valid names:" + names);
  }
  std::vector<Bounds> domain =
      domain_spec.empty() ? sim->domain : parse_bounds(domain_spec);
  if (static_cast<int>(domain.size()) != sim->dims)
    throw std::invalid_argument("domain dimension does not match simulator");

  MatrixXd X;
  if (!design_csv.empty()) {
    const CsvTable table = read_csv(design_csv);
    if (table.values.cols() < sim->dims)
      throw std::invalid_argument(design_csv + ": needs " + std::to_string(sim->dims) +
                                  " input columns");
    X = table.values.leftCols(sim->dims);
  } else {
    if (n < 1) throw std::invalid_argument("simulate: give --design or --n");
    if (design_kind == "grid")
      X = grid_design(n, domain);
    else if (design_kind == "uniform")
      X = uniform_design(n, sim->dims, domain, resolve_seed(seed_opt, "design"));
    else if (design_kind == "lhs")
      X = lhs_design(n, sim->dims, domain, resolve_seed(seed_opt, "design"));
    else
      throw std::invalid_argument("unknown design kind '" + design_kind + "'");
  }

  const auto& fn = emit_truth ? sim->truth : sim->eval;
  VectorXd y(X.rows());
  for (Index i = 0; i < X.rows(); ++i) y(i) = fn(VectorXd(X.row(i).transpose()));

  std::vector<std::string> header;
  for (int l = 0; l < sim->dims; ++l) header.push_back("x" + std::to_string(l + 1));
  header.emplace_back("y");
  MatrixXd values(X.rows(), X.cols() + 1);
  values.leftCols(X.cols()) = X;
  values.col(X.cols()) = y;
  write_csv(out_csv, header, values);
  std::cout << "wrote " << values.rows() << " rows to " << out_csv << "\n";
  return 0;
}

int cmd_design(const std::string& kind, int n, const std::string& domain_spec,
               const std::string& out_csv, const std::optional<std::uint64_t>& seed_opt) {
  const std::vector<Bounds> domain = parse_bounds(domain_spec);
  const auto m = static_cast<Index>(domain.size());
  MatrixXd X;
  if (kind == "grid") {
    X = grid_design(n, domain);
  } else if (kind == "uniform") {
    X = uniform_design(n, m, domain, resolve_seed(seed_opt, "design"));
  } else if (kind == "lhs") {
    X = lhs_design(n, m, domain, resolve_seed(seed_opt, "design"));
  } else {
    throw std::invalid_argument("unknown design kind '" + kind + "' (uniform|grid|lhs)");
  }
  std::vector<std::string> header;
  for (Index l = 0; l < m; ++l) header.push_back("x" + std::to_string(l + 1));
  write_csv(out_csv, header, X);
  std::cout << "wrote " << X.rows() << " points to " << out_csv << "\n";
  return 0;
}

PlotSink make_plot_sink(const fs::path& dir) {
  return [dir](int rep, const std::string& model, const MatrixXd& grid,
               const VectorXd& truth, const VectorXd& mean, const VectorXd& lo,
               const VectorXd& hi) {
    std::vector<std::string> header;
    for (Index l = 0; l < grid.cols(); ++l) header.push_back("x" + std::to_string(l + 1));
    header.emplace_back("truth");
    header.emplace_back("mean");
    const bool with_bounds = lo.size() == grid.rows();
    if (with_bounds) {
      header.emplace_back("lo");
      header.emplace_back("hi");
    }
    MatrixXd values(grid.rows(), grid.cols() + 2 + (with_bounds ? 2 : 0));
    values.leftCols(grid.cols()) = grid;
    values.col(grid.cols()) = truth;
    values.col(grid.cols() + 1) = mean;
    if (with_bounds) {
      values.col(grid.cols() + 2) = lo;
      values.col(grid.cols() + 3) = hi;
    }
    const auto path = dir / ("plot_rep" + std::to_string(rep) + "_" + model + ".csv");
    write_csv(path.string(), header, values);
  };
}

int run_and_write(const ExperimentConfig& cfg, const fs::path& out_dir,
                  const std::vector<int>& plot_reps) {
  fs::create_directories(out_dir);
  const PlotSink sink = plot_reps.empty() ? PlotSink{} : make_plot_sink(out_dir);
  const auto results = run_experiment(cfg, sink, plot_reps);
  const auto summary = summarize_experiment(cfg, results);
  write_raw_csv((out_dir / "raw.csv").string(), cfg, results);
  write_summary_csv((out_dir / "summary.csv").string(), summary);
  std::cout << render_summary(cfg, summary);
  std::cout << "wrote " << (out_dir / "raw.csv").string() << " and "
            << (out_dir / "summary.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-process surrogate modeling with an estimable nugget"};
  app.require_subcommand(1);

  // ---- fit ----
  auto* fit = app.add_subcommand("fit", "fit a GP model to CSV data by MCMC");
  std::string fit_data, fit_out = "model.json", fit_chain_csv, fit_bounds;
  PriorSpec fit_prior;
  McmcSettings fit_mcmc;
  bool fit_no_nugget = false, fit_isotropic = false;
  std::optional<std::uint64_t> fit_seed;
  fit->add_option("--data", fit_data, "input CSV: header, input columns then response")
      ->required();
  fit->add_option("--out", fit_out, "output model file (JSON)");
  fit->add_option("--chain-csv", fit_chain_csv, "also write the chain as CSV");
  fit->add_option("--bounds", fit_bounds, "input bounds lo:hi[,lo:hi...]; default: data range");
  fit->add_option("--d-shape", fit_prior.d_shape, "Gamma shape for range parameters");
  fit->add_option("--d-rate", fit_prior.d_rate, "Gamma rate for range parameters");
  fit->add_option("--g-shape", fit_prior.g_shape, "Gamma shape for the nugget");
  fit->add_option("--g-rate", fit_prior.g_rate, "Gamma rate for the nugget");
  fit->add_option("--a", fit_prior.a, "InverseGamma shape for sigma^2");
  fit->add_option("--b", fit_prior.b, "InverseGamma scale for sigma^2");
  fit->add_flag("--no-nugget", fit_no_nugget, "pin the nugget at exactly zero");
  fit->add_flag("--isotropic", fit_isotropic, "single shared range parameter");
  fit->add_option("--iters", fit_mcmc.n_iter, "MCMC iterations");
  fit->add_option("--burn", fit_mcmc.burn, "burn-in iterations");
  fit->add_option("--thin", fit_mcmc.thin, "thinning stride");
  fit->add_option("--proposal-sd", fit_mcmc.proposal_sd, "log-normal proposal sd");
  fit->add_option("--seed", fit_seed, "RNG seed (drawn from entropy when omitted)");

  // ---- predict ----
  auto* predict = app.add_subcommand("predict", "predict from a fitted model");
  std::string pr_model, pr_test, pr_out = "predictions.csv";
  int pr_grid = 0, pr_draws = 20;
  double pr_level = 0.9;
  bool pr_noise = false;
  std::optional<std::uint64_t> pr_seed;
  predict->add_option("--model", pr_model, "model file from fit")->required();
  predict->add_option("--test", pr_test, "test CSV (first m columns are inputs)");
  predict->add_option("--grid", pr_grid, "predict on a lattice with this many points per dimension");
  predict->add_option("--level", pr_level, "credible level");
  predict->add_flag("--include-noise", pr_noise, "add the nugget at test locations");
  predict->add_option("--draws", pr_draws, "Student-t draws per posterior sample");
  predict->add_option("--out", pr_out, "output CSV");
  predict->add_option("--seed", pr_seed, "RNG seed for the pooled draws");

  // ---- simulate ----
  auto* simulate = app.add_subcommand("simulate", "evaluate a catalog simulator");
  std::string sm_name, sm_design, sm_kind = "grid", sm_domain, sm_out = "simulated.csv";
  int sm_n = 0;
  bool sm_truth = false;
  std::optional<std::uint64_t> sm_seed;
  simulate->add_option("--name", sm_name, "simulator name")->required();
  simulate->add_option("--design", sm_design, "design CSV to evaluate");
  simulate->add_option("--design-kind", sm_kind, "generated design kind (uniform|grid|lhs)");
  simulate->add_option("--n", sm_n, "points (per dimension for grid)");
  simulate->add_option("--domain", sm_domain, "override domain lo:hi[,lo:hi...]");
  simulate->add_flag("--truth", sm_truth, "emit the reference curve instead of the simulator");
  simulate->add_option("--out", sm_out, "output CSV");
  simulate->add_option("--seed", sm_seed, "design seed");

  // ---- design ----
  auto* design = app.add_subcommand("design", "generate an experimental design");
  std::string dg_kind = "uniform", dg_domain, dg_out = "design.csv";
  int dg_n = 10;
  std::optional<std::uint64_t> dg_seed;
  design->add_option("--kind", dg_kind, "uniform|grid|lhs");
  design->add_option("--n", dg_n, "points (per dimension for grid)")->required();
  design->add_option("--domain", dg_domain, "domain lo:hi[,lo:hi...]")->required();
  design->add_option("--out", dg_out, "output CSV");
  design->add_option("--seed", dg_seed, "RNG seed");

  // ---- experiment ----
  auto* experiment = app.add_subcommand("experiment", "run a replicated experiment from a config file");
  std::string ex_config, ex_out_dir = "experiment_out";
  int ex_workers = 0;
  std::vector<int> ex_plots;
  std::optional<std::uint64_t> ex_seed;
  experiment->add_option("--config", ex_config, "JSON experiment config")->required();
  experiment->add_option("--out-dir", ex_out_dir, "output directory");
  experiment->add_option("--workers", ex_workers, "worker threads (overrides config)");
  experiment->add_option("--seed", ex_seed, "master seed (overrides config)");
  experiment->add_option("--plot-replicate", ex_plots, "emit plot data for these replicates");

  // ---- reproduce ----
  auto* repro = app.add_subcommand("reproduce", "rerun a canonical table experiment");
  std::string rp_table, rp_out_dir = "reproduce_out";
  double rp_scale = -1.0;
  int rp_workers = 0;
  std::vector<int> rp_plots;
  std::optional<std::uint64_t> rp_seed;
  repro->add_option("--table", rp_table, "fig1|fig2|table1_exp|table1_fried|table2")
      ->required();
  repro->add_option("--scale", rp_scale, "replicate fraction of the full experiment, in (0,1]");
  repro->add_option("--out-dir", rp_out_dir, "output directory");
  repro->add_option("--workers", rp_workers, "worker threads");
  repro->add_option("--seed", rp_seed, "master seed");
  repro->add_option("--plot-replicate", rp_plots, "emit plot data for these replicates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*fit)
      return cmd_fit(fit_data, fit_out, fit_chain_csv, fit_bounds, fit_prior, fit_mcmc,
                     fit_no_nugget, fit_isotropic, fit_seed);
    if (*predict)
      return cmd_predict(pr_model, pr_test, pr_grid, pr_level, pr_noise, pr_draws, pr_out,
                         pr_seed);
    if (*simulate)
      return cmd_simulate(sm_name, sm_design, sm_kind, sm_n, sm_domain, sm_truth, sm_out,
                          sm_seed);
    if (*design) return cmd_design(dg_kind, dg_n, dg_domain, dg_out, dg_seed);
    if (*experiment) {
      bool had_seed = false;
      ExperimentConfig cfg = load_experiment_config(ex_config, &had_seed);
      if (ex_seed) {
        cfg.master_seed = *ex_seed;
      } else if (!had_seed) {
        cfg.master_seed = entropy_seed();
        std::cout << "master seed: " << cfg.master_seed << "\n";
      }
      if (ex_workers > 0) cfg.workers = ex_workers;
      return run_and_write(cfg, ex_out_dir, ex_plots);
    }
    if (*repro) {
      const auto id = parse_table_id(rp_table);
      if (!id)
        throw std::invalid_argument(
            "unknown table '" + rp_table +
            "'; valid: fig1 fig2 table1_exp table1_fried table2");
      const double scale = rp_scale > 0.0 ? rp_scale : default_scale(*id);
      ExperimentConfig cfg = canonical_config(*id, scale, resolve_seed(rp_seed, "master"));
      if (rp_workers > 0) cfg.workers = rp_workers;
      return run_and_write(cfg, rp_out_dir, rp_plots);
    }
  } catch (const FactorizationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const McmcInitError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const CsvError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
