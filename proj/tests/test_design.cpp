#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "nuggp/design.hpp"

using namespace nuggp;

TEST_CASE("grid design includes endpoints") {
  const MatrixXd g = grid_design(3, {{0.0, 1.0}});
  REQUIRE(g.rows() == 3);
  CHECK(g(0, 0) == 0.0);
  CHECK(g(1, 0) == 0.5);
  CHECK(g(2, 0) == 1.0);

  const MatrixXd g2 = grid_design(3, {{0.0, 1.0}, {10.0, 30.0}});
  REQUIRE(g2.rows() == 9);
  // first coordinate varies fastest
  CHECK(g2(0, 0) == 0.0);
  CHECK(g2(1, 0) == 0.5);
  CHECK(g2(2, 0) == 1.0);
  CHECK(g2(0, 1) == 10.0);
  CHECK(g2(3, 1) == 20.0);
  CHECK(g2(8, 1) == 30.0);

  const MatrixXd mid = grid_design(1, {{2.0, 4.0}});
  CHECK(mid(0, 0) == 3.0);
}

TEST_CASE("uniform design is seed-deterministic and in range") {
  const std::vector<Bounds> dom{{-1.0, 2.0}, {5.0, 6.0}};
  const MatrixXd a = uniform_design(50, 2, dom, 99);
  const MatrixXd b = uniform_design(50, 2, dom, 99);
  const MatrixXd c = uniform_design(50, 2, dom, 100);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a - c).cwiseAbs().maxCoeff() > 0.0);
  for (Index i = 0; i < a.rows(); ++i) {
    CHECK(a(i, 0) >= -1.0);
    CHECK(a(i, 0) <= 2.0);
    CHECK(a(i, 1) >= 5.0);
    CHECK(a(i, 1) <= 6.0);
  }
}

TEST_CASE("lhs puts exactly one point in each stratum of each coordinate") {
  const Index n = 17;
  const std::vector<Bounds> dom{{0.0, 1.0}, {-4.0, 4.0}, {100.0, 200.0}};
  const MatrixXd X = lhs_design(n, 3, dom, 7);
  for (Index l = 0; l < 3; ++l) {
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    for (Index i = 0; i < n; ++i) {
      const auto& b = dom[static_cast<std::size_t>(l)];
      const double u = (X(i, l) - b.lo) / (b.hi - b.lo);
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      ++counts[static_cast<std::size_t>(u * n)];
    }
    for (int c : counts) CHECK(c == 1);
  }
  // determinism
  CHECK((lhs_design(n, 3, dom, 7) - X).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("designs validate their arguments") {
  CHECK_THROWS_AS(uniform_design(0, 1, {{0.0, 1.0}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(uniform_design(5, 2, {{0.0, 1.0}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(grid_design(2, {{1.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(lhs_design(5, 1, {}, 1), std::invalid_argument);
}
