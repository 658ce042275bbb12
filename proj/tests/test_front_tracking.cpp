#include "helpers.hpp"

#include "wft/error.hpp"
#include "wft/fit.hpp"
#include "wft/front_tracking.hpp"
#include "wft/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

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

// Three-level bump in the p-system, exercising both families and all interaction types.
PiecewiseConstantFn gas_bump() {
  return {{-0.5, 0.0, 0.5},
          {make_state({1.0, 0.0}), make_state({1.08, 0.05}), make_state({0.95, -0.04}), make_state({1.0, 0.0})}};
}

} // namespace

TEST_CASE("constant data carry no fronts") {
  auto run = FrontTrackingRun::build(systems::burgers(1.0), PiecewiseConstantFn::constant(make_state({1.0})),
                                     with_epsilon(0.01));
  run.advance_to(5.0);
  CHECK(run.history().empty());
  CHECK(run.total_variation() == 0.0);
  CHECK(run.sample_at(3.0).eval(100.0)(0) == 1.0);
}

TEST_CASE("a single shock travels at the Rankine-Hugoniot speed") {
  auto run = FrontTrackingRun::build(systems::burgers(1.0), scalar_fn({0.0}, {1.1, 1.0}), with_epsilon(0.01));
  run.advance_to(2.0);
  REQUIRE(run.alive().size() == 1);
  const Front f = run.alive().front();
  CHECK(f.kind == WaveKind::Shock);
  CHECK(f.position(2.0) == doctest::Approx(2.1).epsilon(1e-14));
  const auto snap = run.sample_at(2.0);
  REQUIRE(snap.breakpoints().size() == 1);
  CHECK(snap.breakpoints()[0] == doctest::Approx(2.1));
}

TEST_CASE("a rarefaction splits into fronts of size at most epsilon") {
  auto run = FrontTrackingRun::build(systems::burgers(1.0), scalar_fn({0.0}, {1.0, 1.1}), with_epsilon(0.02));
  const auto fronts = run.alive();
  REQUIRE(fronts.size() == 5);
  for (const auto& f : fronts) {
    CHECK(f.kind == WaveKind::Rarefaction);
    CHECK(f.size == doctest::Approx(0.02).epsilon(1e-10));
  }
  for (std::size_t k = 0; k + 1 < fronts.size(); ++k) CHECK(fronts[k].speed < fronts[k + 1].speed);
}

TEST_CASE("two shocks merge at the predicted point") {
  auto run = FrontTrackingRun::build(testing::wide_burgers(1.0), scalar_fn({0.0, 1.0}, {1.2, 1.1, 1.0}),
                                     with_epsilon(0.01));
  run.advance_to(9.5);
  CHECK(run.alive().size() == 2);
  run.advance_to(12.0);
  REQUIRE(run.alive().size() == 1);
  const Front merged = run.alive().front();
  CHECK(merged.t0 == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(merged.x0 == doctest::Approx(11.5).epsilon(1e-12));
  CHECK(merged.speed == doctest::Approx(1.1).epsilon(1e-12));
  const auto times = run.event_times();
  REQUIRE(times.size() == 1);
  CHECK(times[0] == doctest::Approx(10.0));
}

TEST_CASE("sample_at replays past configurations and rejects the future") {
  auto run = FrontTrackingRun::build(testing::wide_burgers(1.0), scalar_fn({0.0, 1.0}, {1.2, 1.1, 1.0}),
                                     with_epsilon(0.01));
  run.advance_to(12.0);
  const auto early = run.sample_at(5.0);
  REQUIRE(early.breakpoints().size() == 2);
  CHECK(early.breakpoints()[0] == doctest::Approx(5.75));
  CHECK(early.breakpoints()[1] == doctest::Approx(6.25));
  CHECK(early.eval(6.0)(0) == doctest::Approx(1.1));
  const auto late = run.sample_at(12.0);
  REQUIRE(late.breakpoints().size() == 1);
  CHECK(late.breakpoints()[0] == doctest::Approx(13.7));
  CHECK(run.sample_at(0.0).values() == run.sample_at(0.0).values());
  CHECK_THROWS_AS(run.sample_at(12.5), Error);
  CHECK_THROWS_AS(run.sample_at(-1.0), Error);
  CHECK_THROWS_AS(run.advance_to(11.0), Error);

  std::vector<double> seen;
  run.for_each_snapshot(12.0, [&](double s, const PiecewiseConstantFn&) { seen.push_back(s); });
  REQUIRE(seen.size() == 2);
  CHECK(seen[0] == 0.0);
  CHECK(seen[1] == doctest::Approx(10.0));
}

TEST_CASE("interaction potential never increases on rich systems") {
  for (double eps : {0.02, 0.01, 0.005}) {
    auto run = FrontTrackingRun::build(systems::psystem_speed({}), gas_bump(), with_epsilon(eps));
    run.advance_to(3.0);
    const auto& d = run.diagnostics();
    INFO("eps = " << eps);
    CHECK(d.events() > 0);
    CHECK(d.max_upsilon_increase <= 1e-12);
    for (std::size_t k = 1; k < d.upsilon_history.size(); ++k)
      CHECK(d.upsilon_history[k].second <= d.upsilon_history[k - 1].second + 1e-12);
    for (const auto& [t, tv] : d.tv_history) CHECK(tv <= 4.0 * d.tv0);
    CHECK(interaction_potential(run) == doctest::Approx(run.upsilon()));
  }
}

TEST_CASE("front speeds, sizes and non-physical fronts respect their bounds") {
  auto run = FrontTrackingRun::build(systems::psystem_speed({}), gas_bump(), with_epsilon(0.01));
  run.advance_to(3.0);
  const double lh = run.lambda_hat();
  std::size_t np = 0;
  for (const auto& f : run.history()) {
    CHECK(std::abs(f.speed) <= lh + 1e-12);
    if (f.kind == WaveKind::Rarefaction) CHECK(f.size <= 0.01 + 1e-12);
    if (f.kind == WaveKind::NonPhysical) {
      ++np;
      CHECK(f.family == 3);
      CHECK(f.speed == lh);
    }
    if (f.kind == WaveKind::Shock) CHECK(f.size < 0.0);
  }
  CHECK(run.diagnostics().max_alive_fronts >= run.alive().size());
}

TEST_CASE("conservation holds up to the front-tracking error") {
  const ConeDomain cone(-2.0, 2.0, systems::psystem_speed({}).lambda_hat);
  for (const auto& sys : {systems::psystem_speed({}), systems::psystem_momentum({})}) {
    for (double eps : {0.02, 0.005}) {
      auto run = FrontTrackingRun::build(sys, gas_bump(), with_epsilon(eps));
      const double t = 0.5 * cone.max_time();
      run.advance_to(t);
      INFO(sys.name << " eps = " << eps);
      CHECK(conservation_defect(run, t, cone) <= 10.0 * eps * (cone.b() - cone.a()));
    }
  }
}

TEST_CASE("refining epsilon converges at first order or better") {
  const auto sys = systems::psystem_speed({});
  const PiecewiseConstantFn datum({0.0}, {make_state({1.05, -0.05}), make_state({1.0, 0.1})});
  const ConeDomain cone(-2.0, 2.0, sys.lambda_hat);
  const double t = 0.5;
  auto snapshot = [&](double e) {
    auto run = FrontTrackingRun::build(sys, datum, with_epsilon(e));
    run.advance_to(t);
    return run.sample_at(t);
  };
  std::vector<double> eps{0.04, 0.02, 0.01, 0.005}, gaps;
  for (double e : eps) gaps.push_back(l1_distance(snapshot(e), snapshot(0.5 * e), cone.at(t)));
  const auto fit = fit_loglog(eps, gaps);
  INFO("slope = " << fit.slope);
  CHECK(fit.slope >= 0.8);
}

TEST_CASE("runs are deterministic") {
  auto once = [] {
    auto run = FrontTrackingRun::build(systems::euler_energy(2.0),
                                       PiecewiseConstantFn({-0.3, 0.3}, {make_state({1.0, 0.0, 0.0}),
                                                                         make_state({1.1, 0.05, 0.05}),
                                                                         make_state({1.0, 0.0, 0.0})}),
                                       with_epsilon(0.02));
    run.advance_to(1.0);
    std::ostringstream out;
    run.write_fronts_csv(out);
    return out.str();
  };
  const std::string a = once();
  CHECK(a.rfind("id,t_start,x_start,t_end,x_end,kind,family,size,speed\n", 0) == 0);
  CHECK(a == once());
}

TEST_CASE("Riemann data evolve self-similarly") {
  const auto sys = systems::euler_entropy(2.0);
  const PiecewiseConstantFn datum({0.0}, {make_state({1.1, 0.05, 0.02}), make_state({0.95, -0.05, -0.03})});
  auto run = FrontTrackingRun::build(sys, datum, with_epsilon(0.01));
  run.advance_to(2.0);
  CHECK(run.event_times().empty());
  const auto one = run.sample_at(1.0);
  const auto two = run.sample_at(2.0);
  REQUIRE(one.breakpoints().size() == two.breakpoints().size());
  for (std::size_t k = 0; k < one.breakpoints().size(); ++k)
    CHECK(two.breakpoints()[k] == doctest::Approx(2.0 * one.breakpoints()[k]).epsilon(1e-12));
  CHECK(one.values() == two.values());
}

TEST_CASE("budget and domain violations are reported") {
  FrontTrackingOptions tight = with_epsilon(0.001);
  tight.max_fronts = 10;
  try {
    (void)FrontTrackingRun::build(systems::burgers(1.0), scalar_fn({0.0}, {0.95, 1.05}), tight);
    FAIL("expected TooManyFronts");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooManyFronts);
  }

  try {
    auto run = FrontTrackingRun::build(systems::psystem_momentum({}),
                                       PiecewiseConstantFn({0.0}, {make_state({1.15, 0.15}), make_state({1.15, -0.15})}),
                                       with_epsilon(0.01));
    run.advance_to(1.0);
    FAIL("expected DomainExit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainExit);
  }

  CHECK_THROWS_AS(FrontTrackingRun::build(systems::burgers(1.0), scalar_fn({0.0}, {1.0, 1.3}), with_epsilon(0.01)),
                  Error);
}
