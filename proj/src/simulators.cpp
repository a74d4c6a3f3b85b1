#include "nuggp/simulators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "nuggp/optimize.hpp"
#include "nuggp/rng.hpp"

namespace nuggp {

double gramacy1d(double x) {
  if (x == 0.0) throw std::invalid_argument("gramacy1d: pole at x = 0");
  const double xm1 = x - 1.0;
  return std::sin(10.0 * M_PI * x) / (2.0 * x) + xm1 * xm1 * xm1 * xm1;
}

double cauchy_pdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return 1.0 / (M_PI * sigma * (1.0 + z * z));
}

double cauchysine(double x) { return std::sin(x) - 0.02 * cauchy_pdf(x, 1.57, 0.05); }

double exp2d(double x1, double x2) { return x1 * std::exp(-x1 * x1 - x2 * x2); }

double friedman5(const VectorXd& x) {
  if (x.size() != 5) throw std::invalid_argument("friedman5: needs a 5-vector");
  return 10.0 * std::sin(M_PI * x(0) * x(1)) + 20.0 * (x(2) - 0.5) * (x(2) - 0.5) +
         10.0 * x(3) + 5.0 * x(4);
}

double w_profile(double y) {
  return std::exp(-(y - 1.0) * (y - 1.0)) + std::exp(-0.8 * (y + 1.0) * (y + 1.0)) -
         0.05 * std::sin(8.0 * (y + 0.1));
}

double f2d(double x1, double x2) { return -w_profile(x1) * w_profile(x2); }

double fsim(double x) {
  const auto r = nelder_mead_min([x](double x1) { return f2d(x1, x); }, x);
  return r.value;
}

double true_fmin(double x) {
  // Dense scan over the minimizing coordinate, then polish around the best
  // few grid points.
  constexpr int kGrid = 2000;
  constexpr double kLo = -3.0, kHi = 3.0;
  std::array<double, kGrid> values;
  for (int i = 0; i < kGrid; ++i) {
    const double x1 = kLo + (kHi - kLo) * i / (kGrid - 1);
    values[static_cast<std::size_t>(i)] = f2d(x1, x);
  }
  std::array<int, kGrid> order;
  for (int i = 0; i < kGrid; ++i) order[static_cast<std::size_t>(i)] = i;
  std::partial_sort(order.begin(), order.begin() + 5, order.end(),
                    [&](int a, int b) { return values[a] < values[b]; });
  double best = values[static_cast<std::size_t>(order[0])];
  for (int k = 0; k < 5; ++k) {
    const double x1 = kLo + (kHi - kLo) * order[static_cast<std::size_t>(k)] / (kGrid - 1);
    const auto r = nelder_mead_min([x](double v) { return f2d(v, x); }, x1);
    best = std::min(best, r.value);
  }
  return best;
}

double seeded_noise_sim(const std::function<double(double)>& base, double x, double sd) {
  if (!(sd >= 0.0)) throw std::invalid_argument("seeded_noise_sim: sd must be >= 0");
  if (sd == 0.0) return base(x);
  return base(x) + sd * keyed_normal(x);
}

double mixture_sim(const std::function<double(double)>& good,
                   const std::function<double(double)>& bad, double x, double p_bad) {
  if (!(p_bad >= 0.0 && p_bad <= 1.0))
    throw std::invalid_argument("mixture_sim: p_bad must be in [0,1]");
  return keyed_uniform(x) < p_bad ? bad(x) : good(x);
}

const std::vector<SimulatorSpec>& simulator_catalog() {
  static const std::vector<SimulatorSpec> catalog = [] {
    std::vector<SimulatorSpec> c;
    c.push_back({"gramacy1d", 1, {{0.5, 2.5}}, true,
                 "sin(10 pi x)/(2x) + (x-1)^4, the sparse-data 1-d function",
                 [](const VectorXd& x) { return gramacy1d(x(0)); },
                 [](const VectorXd& x) { return gramacy1d(x(0)); }});
    c.push_back({"cauchysine", 1, {{0.0, 2.0 * M_PI}}, true,
                 "sin(x) minus a narrow Cauchy spike at 1.57",
                 [](const VectorXd& x) { return cauchysine(x(0)); },
                 [](const VectorXd& x) { return cauchysine(x(0)); }});
    c.push_back({"exp2d", 2, {{-2.0, 6.0}, {-2.0, 6.0}}, true,
                 "x1 * exp(-x1^2 - x2^2)",
                 [](const VectorXd& x) { return exp2d(x(0), x(1)); },
                 [](const VectorXd& x) { return exp2d(x(0), x(1)); }});
    c.push_back({"friedman5", 5,
                 {{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}, true,
                 "first Friedman benchmark function, five inputs",
                 [](const VectorXd& x) { return friedman5(x); },
                 [](const VectorXd& x) { return friedman5(x); }});
    c.push_back({"fsim", 1, {{-1.5, 1.5}}, true,
                 "Nelder-Mead minimum of a projection of f2d, started at x; "
                 "deterministic but discontinuous (truth: the global minimum)",
                 [](const VectorXd& x) { return fsim(x(0)); },
                 [](const VectorXd& x) { return true_fmin(x(0)); }});
    return c;
  }();
  return catalog;
}

const SimulatorSpec* find_simulator(std::string_view name) {
  for (const auto& s : simulator_catalog())
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace nuggp
