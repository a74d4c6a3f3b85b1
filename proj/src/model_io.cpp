#include "nuggp/model_io.hpp"

#include <fstream>

#include <json.hpp>

#include "nuggp/csv.hpp"

namespace nuggp {

using nlohmann::json;

namespace {

json vector_to_json(const VectorXd& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

VectorXd vector_from_json(const json& a) {
  VectorXd v(static_cast<Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Index>(i)) = a[i].get<double>();
  return v;
}

json matrix_to_json(const MatrixXd& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXd matrix_from_json(const json& rows, Index cols_hint) {
  const auto nr = static_cast<Index>(rows.size());
  MatrixXd m(nr, nr > 0 ? static_cast<Index>(rows[0].size()) : cols_hint);
  for (Index i = 0; i < nr; ++i)
    for (Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get<double>();
  return m;
}

}  // namespace

void save_model(const std::string& path, const FittedModel& model) {
  json j;
  j["format"] = "nuggp-model";
  j["version"] = 1;
  json ds;
  json bounds = json::array();
  for (const auto& b : model.data.bounds) bounds.push_back({b.lo, b.hi});
  ds["bounds"] = std::move(bounds);
  ds["x_scaled"] = matrix_to_json(model.data.X);
  ds["y_std"] = vector_to_json(model.data.y);
  ds["y_mean"] = model.data.y_mean;
  ds["y_sd"] = model.data.y_sd;
  j["dataset"] = std::move(ds);

  const PriorSpec& pr = model.chain.prior;
  j["prior"] = {{"d_shape", pr.d_shape}, {"d_rate", pr.d_rate}, {"g_shape", pr.g_shape},
                {"g_rate", pr.g_rate},   {"a", pr.a},           {"b", pr.b},
                {"fix_g_zero", pr.fix_g_zero}};
  const McmcSettings& st = model.chain.settings;
  j["mcmc"] = {{"n_iter", st.n_iter},
               {"burn", st.burn},
               {"thin", st.thin},
               {"proposal_sd", st.proposal_sd}};
  j["isotropic"] = model.chain.isotropic;
  j["seed"] = model.chain.seed;

  json chain;
  chain["accept_d"] = model.chain.accept_d;
  chain["accept_g"] = model.chain.accept_g;
  json samples = json::array();
  for (const auto& s : model.chain.samples) {
    json row;
    row["d"] = vector_to_json(s.d);
    row["g"] = s.g;
    row["log_post"] = s.log_post;
    row["jitter"] = s.jitter;
    samples.push_back(std::move(row));
  }
  chain["samples"] = std::move(samples);
  j["chain"] = std::move(chain);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_model: cannot open " + path);
  out << j.dump(1) << "\n";
}

FittedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_model: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("load_model: " + path + " is not valid JSON: " + e.what());
  }
  if (j.value("format", "") != std::string("nuggp-model"))
    throw std::runtime_error("load_model: " + path + " is not a model file");

  FittedModel model;
  const json& ds = j.at("dataset");
  for (const auto& b : ds.at("bounds"))
    model.data.bounds.push_back({b[0].get<double>(), b[1].get<double>()});
  model.data.X = matrix_from_json(ds.at("x_scaled"),
                                  static_cast<Index>(model.data.bounds.size()));
  model.data.y = vector_from_json(ds.at("y_std"));
  model.data.y_mean = ds.at("y_mean").get<double>();
  model.data.y_sd = ds.at("y_sd").get<double>();

  const json& pr = j.at("prior");
  model.chain.prior = {pr.at("d_shape"), pr.at("d_rate"), pr.at("g_shape"),
                       pr.at("g_rate"),  pr.at("a"),      pr.at("b"),
                       pr.at("fix_g_zero")};
  const json& st = j.at("mcmc");
  model.chain.settings = {st.at("n_iter"), st.at("burn"), st.at("thin"),
                          st.at("proposal_sd")};
  model.chain.isotropic = j.at("isotropic").get<bool>();
  model.chain.seed = j.at("seed").get<std::uint64_t>();
  model.chain.m = model.data.m();

  const json& ch = j.at("chain");
  model.chain.accept_d = ch.at("accept_d").get<double>();
  model.chain.accept_g = ch.at("accept_g").get<double>();
  for (const auto& row : ch.at("samples")) {
    ChainSample s;
    s.d = vector_from_json(row.at("d"));
    s.g = row.at("g").get<double>();
    s.log_post = row.at("log_post").get<double>();
    s.jitter = row.at("jitter").get<double>();
    model.chain.samples.push_back(std::move(s));
  }
  return model;
}

void write_chain_csv(const std::string& path, const Chain& chain) {
  std::vector<std::string> header;
  for (Index l = 0; l < chain.m; ++l) header.push_back("d_" + std::to_string(l + 1));
  header.emplace_back("g");
  header.emplace_back("log_post");
  MatrixXd values(static_cast<Index>(chain.samples.size()), chain.m + 2);
  for (std::size_t i = 0; i < chain.samples.size(); ++i) {
    const auto r = static_cast<Index>(i);
    values.row(r).head(chain.m) = chain.samples[i].d.transpose();
    values(r, chain.m) = chain.samples[i].g;
    values(r, chain.m + 1) = chain.samples[i].log_post;
  }
  write_csv(path, header, values);
}

}  // namespace nuggp
