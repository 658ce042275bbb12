#include "helpers.hpp"

#include "wft/error.hpp"
#include "wft/fit.hpp"
#include "wft/metrics.hpp"
#include "wft/riemann.hpp"

#include <doctest.h>

#include <cmath>

using namespace wft;

namespace {

PiecewiseConstantFn scalar_fn(std::vector<double> xs, std::vector<double> vs) {
  std::vector<State> vals;
  for (double v : vs) vals.push_back(make_state({v}));
  return {std::move(xs), std::move(vals)};
}

FrontTrackingOptions with_epsilon(double eps) {
  FrontTrackingOptions o;
  o.epsilon = eps;
  return o;
}

} // namespace

TEST_CASE("wave measure examples") {
  const auto b = systems::burgers(1.0);
  const auto m = wave_measure(b, scalar_fn({0.0, 1.0}, {1.1, 1.0, 1.05}), 1);
  REQUIRE(m.atoms.size() == 2);
  CHECK(m.atoms[0].first == 0.0);
  CHECK(m.atoms[0].second == doctest::Approx(-0.1));
  CHECK(m.atoms[1].second == doctest::Approx(0.05));
  CHECK(m.negative() == doctest::Approx(0.1));
  CHECK(m.positive() == doctest::Approx(0.05));
  CHECK(m.total_variation() == doctest::Approx(0.15));
  CHECK(m.mass() == doctest::Approx(-0.05));
  CHECK(m.negative(Interval{0.5, 2.0}) == 0.0);
  CHECK(m.positive(Interval{1.0, 1.0}) == doctest::Approx(0.05));
  CHECK(negative_variation(b, scalar_fn({0.0}, {1.1, 1.0})) == doctest::Approx(0.1));

  // A pure 2-wave datum has no 1-wave mass.
  const auto p = systems::psystem_speed({});
  const State u = p.domain.center();
  const PiecewiseConstantFn two({0.0}, {u, lax_curve(p, 2, u, -0.03)});
  CHECK(std::abs(wave_measure(p, two, 1).total_variation()) <= 1e-10);
  CHECK(wave_measure(p, two, 2).negative() == doctest::Approx(0.03).epsilon(1e-8));
}

TEST_CASE("exact L1 distance of piecewise constant functions") {
  const auto u = scalar_fn({0.0}, {1.0, 0.0});
  const auto v = scalar_fn({0.25}, {1.0, 0.0});
  CHECK(l1_distance(u, v, Interval{-1.0, 1.0}) == doctest::Approx(0.25));
  CHECK(l1_distance(u, v, Interval{0.1, 1.0}) == doctest::Approx(0.15));
  CHECK(l1_distance(u, u, Interval{-1.0, 1.0}) == 0.0);
  const PiecewiseConstantFn a({0.0}, {make_state({1.0, 2.0}), make_state({0.0, 0.0})});
  const PiecewiseConstantFn c({0.5}, {make_state({1.0, 2.0}), make_state({0.0, 0.0})});
  CHECK(l1_distance(a, c, Interval{-1.0, 1.0}) == doctest::Approx(1.5));
}

TEST_CASE("cone distance of two scalar shocks") {
  const auto pair = systems::burgers_pair(1, 2);
  const auto datum = scalar_fn({0.0}, {1.1, 1.0});
  auto left = FrontTrackingRun::build(pair.left, datum, with_epsilon(0.01));
  auto right = FrontTrackingRun::build(pair.right, datum, with_epsilon(0.01));
  left.advance_to(1.0);
  right.advance_to(1.0);
  const ConeDomain cone(-5.0, 5.0, pair.lambda_hat());
  CHECK(cone_l1_distance(left, right, 1.0, cone) == doctest::Approx(0.001 / 12.6).epsilon(1e-6));
}

TEST_CASE("diameter examples") {
  CHECK(diameter({make_state({1.0}), make_state({1.1}), make_state({0.95})}) == doctest::Approx(0.15));
  CHECK(diameter({make_state({0.0, 0.0}), make_state({1.0, 2.0}), make_state({0.5, -1.0})}) == doctest::Approx(3.5));
  CHECK(diameter({make_state({0.3, 0.1})}) == 0.0);
  const auto u = scalar_fn({0.0, 1.0}, {1.0, 1.1, 0.95});
  CHECK(diam(u) == doctest::Approx(0.15));
  CHECK(diam(u, Interval{-1.0, 0.5}) == doctest::Approx(0.1));

  auto run = FrontTrackingRun::build(systems::burgers(1.0), scalar_fn({0.0}, {1.1, 1.0}), with_epsilon(0.01));
  run.advance_to(1.0);
  CHECK(diam(run, 1.0, ConeDomain(-5.0, 5.0, 1.5)) == doctest::Approx(0.1));
  CHECK(diam(run, 1.0, ConeDomain(2.0, 5.0, 1.0)) == 0.0);
}

TEST_CASE("third-order defect examples") {
  CHECK(delta_functional(systems::traffic_pair(1, 2), 21).value <= 1e-8);
  const auto b = delta_functional(systems::burgers_pair(1, 2), 21);
  CHECK(b.value == doctest::Approx(1.0 / 0.9).epsilon(1e-6));
  CHECK(b.argmax(0) == doctest::Approx(0.9));
  CHECK(delta_functional(systems::psystem_pair({}), 21).value == doctest::Approx(0.994).epsilon(0.01));
  CHECK(delta_functional(systems::euler_pair(2.0), 9).value > 0.1);
}

TEST_CASE("shock-curve contact") {
  const std::vector<double> sigmas{-0.1, -0.05, -0.02, -0.01};
  const auto same = kappa_estimate(SystemPair{systems::burgers(1.0), systems::burgers(1.0), "same"},
                                   make_state({1.0}), 1, sigmas);
  CHECK(same.state_ratio_max == 0.0);
  CHECK(same.speed_ratio_max <= 1e-10);

  const auto scalar = kappa_estimate(systems::burgers_pair(1, 2), make_state({1.0}), 1, sigmas);
  CHECK(scalar.state_ratio_max <= 1e-10);
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    const double s = sigmas[k];
    CHECK(scalar.speed_differences[k] / (s * s) == doctest::Approx(1.0 / (6.0 * (2.0 + s))).epsilon(1e-6));
  }

  const auto gas = kappa_estimate(systems::psystem_pair({}), make_state({1.0, 0.0}), 1,
                                  {-0.1, -0.05, -0.02, -0.01, -0.005, -0.002, -0.001});
  REQUIRE(gas.state_slope);
  REQUIRE(gas.speed_slope);
  CHECK(*gas.state_slope >= 2.9);
  CHECK(*gas.speed_slope >= 1.9);
  CHECK_THROWS_AS(kappa_estimate(systems::euler_pair(2.0), make_state({1.0, 0.0, 0.0}), 2, sigmas), Error);
}

TEST_CASE("interaction potential examples") {
  const auto sys = testing::wide_burgers(1.0);
  auto run = FrontTrackingRun::build(sys, scalar_fn({0.0, 1.0}, {1.2, 1.1, 1.0}), with_epsilon(0.01));
  CHECK(run.diagnostics().upsilon_constant == doctest::Approx(10.0));
  CHECK(interaction_potential(run) == doctest::Approx(0.3));
  run.advance_to(12.0);
  CHECK(interaction_potential(run) == doctest::Approx(0.2));

  auto single = FrontTrackingRun::build(systems::burgers(1.0), scalar_fn({0.0}, {1.1, 1.0}), with_epsilon(0.01));
  CHECK(interaction_potential(single) == doctest::Approx(0.1));
  auto diverging = FrontTrackingRun::build(systems::burgers(1.0), scalar_fn({0.0}, {1.0, 1.1}), with_epsilon(0.05));
  CHECK(interaction_potential(diverging) == 0.0);

  auto euler = FrontTrackingRun::build(systems::euler_energy(2.0), PiecewiseConstantFn::constant(make_state({1.0, 0.0, 0.0})),
                                       with_epsilon(0.01));
  CHECK_THROWS_AS(interaction_potential(euler), Error);
}

TEST_CASE("sharp scalar constant") {
  CHECK(scalar_sharp_constant(systems::burgers_pair(1, 2)) == doctest::Approx(2.0 / 0.9).epsilon(1e-6));
  CHECK(scalar_sharp_constant(systems::burgers_pair(1, 1)) <= 1e-8);
}

TEST_CASE("log-log fits") {
  std::vector<double> x{0.1, 0.05, 0.02, 0.01}, y;
  for (double v : x) y.push_back(3.0 * v * v * v);
  const auto fit = fit_loglog(x, y);
  CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0));
  CHECK(fit.slope_lo <= fit.slope);
  CHECK(fit.slope_hi >= fit.slope);
  CHECK(fit.points == 4);

  const auto noisy = fit_loglog({1.0, 2.0, 4.0, 8.0}, {1.0, 4.5, 15.0, 70.0});
  CHECK(noisy.slope_lo < noisy.slope);
  CHECK(noisy.slope < noisy.slope_hi);
  CHECK_THROWS_AS(fit_loglog({1.0}, {1.0}), Error);
  CHECK_THROWS_AS(fit_loglog({1.0, 2.0}, {1.0, 0.0}), Error);
}
