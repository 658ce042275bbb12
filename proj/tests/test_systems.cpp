#include "helpers.hpp"

#include "wft/error.hpp"
#include "wft/metrics.hpp"

#include <doctest.h>

#include <cmath>

using namespace wft;

TEST_CASE("characteristic matrix examples") {
  const auto traffic = systems::traffic(1.0);
  const Matrix a = char_matrix(traffic, make_state({1.0, 2.0}));
  CHECK(a(0, 0) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(std::abs(a(0, 1)) <= 1e-12);
  CHECK(std::abs(a(1, 0)) <= 1e-12);
  CHECK(std::abs(a(1, 1)) <= 1e-12);

  // Speed form with k = 1, γ = 2 at (ρ, v) = (1, 0): A = [[0, 1], [1, 0]].
  const Matrix p = char_matrix(systems::psystem_speed({}), make_state({1.0, 0.0}));
  CHECK(std::abs(p(0, 0)) <= 1e-12);
  CHECK(p(0, 1) == doctest::Approx(1.0));
  CHECK(p(1, 0) == doctest::Approx(1.0));
  CHECK(std::abs(p(1, 1)) <= 1e-12);

  CHECK(char_matrix(systems::burgers(1.0), make_state({0.5}))(0, 0) == doctest::Approx(0.5));
  CHECK(char_matrix(systems::burgers(3.0), make_state({0.5}))(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("eigen-structure examples") {
  const auto e = eigen(systems::psystem_speed({}), make_state({1.0, 0.0}));
  CHECK(e.lambdas(0) == doctest::Approx(-1.0));
  CHECK(e.lambdas(1) == doctest::Approx(1.0));
  const auto b = eigen(systems::burgers(2.0), make_state({1.05}));
  CHECK(b.lambdas(0) == doctest::Approx(1.05));
  CHECK(b.right(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("pairs share their characteristic matrix and mismatched pairs do not") {
  for (const auto& pair : testing::shipped_pairs()) {
    INFO(pair.label);
    CHECK(char_matrix_mismatch(pair, 64) <= 1e-10);
  }
  SystemPair bad{systems::psystem_speed({1.0, 2.0}), systems::psystem_momentum({std::sqrt(2.0), 2.0}), "bad"};
  CHECK(char_matrix_mismatch(bad, 64) > 1e-2);
}

TEST_CASE("eigenpairs of the conserved flux match the transported ones") {
  for (const auto& sys : testing::shipped_systems()) {
    INFO(sys.name);
    for (const auto& u : sample_domain(sys.domain, 8)) CHECK(conjugate_eigen_check(sys, u) <= 1e-5);
  }
}

TEST_CASE("eigen residuals, biorthogonality and normalization on random points") {
  for (const auto& sys : testing::shipped_systems()) {
    INFO(sys.name);
    double residual = 0.0, biortho = 0.0, normal = 0.0, numeric = 0.0;
    for (const auto& u : testing::random_points(sys.domain, 1000, 3)) {
      const Matrix a = char_matrix(sys, u);
      const EigenData e = eigen(sys, u);
      for (int i = 0; i < sys.n; ++i) {
        const State r = e.right.col(i);
        residual = std::max(residual, (State(a * r) - e.lambdas(i) * r).cwiseAbs().maxCoeff());
      }
      const Matrix id = Matrix::Identity(sys.n, sys.n);
      biortho = std::max(biortho, (Matrix(e.left * e.right) - id).cwiseAbs().maxCoeff());
      for (int i = 0; i + 1 < sys.n; ++i) CHECK(e.lambdas(i) < e.lambdas(i + 1));
      numeric = std::max(numeric, (eigen_numeric(sys, u).lambdas - e.lambdas).cwiseAbs().maxCoeff());
    }
    for (const auto& u : testing::random_points(sys.domain, 50, 5)) {
      const EigenData e = eigen(sys, u);
      for (int i = 1; i <= sys.n; ++i) {
        const State r = e.right.col(i - 1);
        if (sys.genuinely_nonlinear(i))
          normal = std::max(normal, std::abs(lambda_gradient(sys, u, i).dot(r) - 1.0));
        else
          normal = std::max(normal, std::abs(r.norm() - 1.0));
      }
    }
    CHECK(residual <= 1e-10);
    CHECK(biortho <= 1e-10);
    CHECK(normal <= 1e-6);
    CHECK(numeric <= 1e-8);
  }
}

TEST_CASE("gas dynamics speeds are ordered and the middle field is degenerate") {
  for (double gamma : {1.4, 2.0, 3.0}) {
    const auto sys = systems::euler_energy(gamma);
    CHECK_FALSE(sys.genuinely_nonlinear(2));
    for (const auto& u : testing::random_points(sys.domain, 100, 9)) {
      const auto e = eigen(sys, u);
      CHECK(e.lambdas(0) < e.lambdas(1));
      CHECK(e.lambdas(1) == doctest::Approx(u(1)));
      CHECK(e.lambdas(1) < e.lambdas(2));
      CHECK(std::abs(lambda_gradient(sys, u, 2).dot(State(e.right.col(1)))) <= 1e-7);
    }
  }
  CHECK_THROWS_AS(systems::euler_pair(3.5), Error);
}

TEST_CASE("Riemann coordinates diagonalize rich systems") {
  for (const auto& sys : testing::shipped_systems()) {
    if (!sys.rich()) continue;
    INFO(sys.name);
    for (const auto& u : testing::random_points(sys.domain, 100, 21)) {
      const Matrix dz = fd_jacobian(sys.riemann_coordinates, u, sys.n);
      const EigenData e = eigen(sys, u);
      for (int i = 0; i < sys.n; ++i)
        for (int j = 0; j < sys.n; ++j) {
          const double v = dz.row(i).dot(e.right.col(j));
          if (i == j)
            CHECK(v > 0.0);
          else
            CHECK(std::abs(v) <= 1e-7);
        }
    }
  }
}

TEST_CASE("traffic pair has vanishing third-order defect") {
  const auto report = delta_functional(systems::traffic_pair(1, 2), 21);
  CHECK(report.value <= 1e-8);
}

TEST_CASE("isentropic embedding lifts and projects") {
  const auto emb = systems::isentropic_embed(2.0, 0.0);
  const State u = emb.lift(make_state({1.1, 0.2}));
  REQUIRE(u.size() == 3);
  CHECK(u(2) == 0.0);
  const auto fn = PiecewiseConstantFn({0.0}, {make_state({1.0, 0.0}), make_state({1.05, -0.1})});
  const auto back = emb.project(emb.lift(fn));
  CHECK(back.values() == fn.values());
  CHECK_THROWS_AS(systems::isentropic_embed(2.0, 10.0), Error);
}

TEST_CASE("registry builds pairs by id") {
  CHECK(systems::make_pair(std::string("burgers")).left.n == 1);
  CHECK(systems::make_pair(std::string("euler")).left.n == 3);
  CHECK(systems::make_pair(std::string(R"({"pair":"traffic","q":1,"q_tilde":3})")).left.n == 2);
  CHECK_THROWS_AS(systems::make_pair(std::string("unknown")), Error);
}
