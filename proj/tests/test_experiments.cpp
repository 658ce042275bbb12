#include "helpers.hpp"

#include "wft/error.hpp"
#include "wft/experiments.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wft;
using nlohmann::json;

namespace {

json burgers_shock_config() {
  return json::parse(R"({
    "pair": {"pair": "burgers", "m": 1, "m_tilde": 2},
    "datum": {"family": "single_shock", "anchor": "right", "base": [1.0]},
    "amplitudes": [0.1],
    "epsilon": 1e-5,
    "cone": {"a": -3.0, "b": 5.0},
    "t": 1.0
  })");
}

json burgers_scaling_config() {
  json j = burgers_shock_config();
  j["amplitudes"] = {0.1, 0.05, 0.02, 0.01};
  j["epsilon"] = {{"rule", "cubic"}, {"factor", 0.01}};
  return j;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name)
      : path(std::filesystem::temp_directory_path() / ("wft_test_" + name)) {
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

ErrorCode code_of(const json& j) {
  try {
    (void)ExperimentConfig::from_json(j);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

} // namespace

TEST_CASE("malformed configurations are rejected") {
  json j = burgers_shock_config();
  CHECK(code_of(json::array()) == ErrorCode::BadConfig);
  json no_pair = j;
  no_pair.erase("pair");
  CHECK(code_of(no_pair) == ErrorCode::BadConfig);
  json no_eps = j;
  no_eps.erase("epsilon");
  CHECK(code_of(no_eps) == ErrorCode::BadConfig);
  json neg_eps = j;
  neg_eps["epsilon"] = -1.0;
  CHECK(code_of(neg_eps) == ErrorCode::BadConfig);
  json bad_cone = j;
  bad_cone["cone"] = {{"a", 1.0}, {"b", 0.0}};
  CHECK(code_of(bad_cone) == ErrorCode::BadConfig);
  json increasing = j;
  increasing["amplitudes"] = {0.01, 0.1};
  CHECK(code_of(increasing) == ErrorCode::BadConfig);
  json mismatch = j;
  mismatch["epsilon"] = {0.1, 0.2};
  CHECK(code_of(mismatch) == ErrorCode::BadConfig);
  json late = j;
  late["times"] = {0.5, 2.0};
  CHECK(code_of(late) == ErrorCode::BadConfig);
  json neg_seed = j;
  neg_seed["seed"] = -3;
  CHECK(code_of(neg_seed) == ErrorCode::BadConfig);
  json int_seed = j;
  int_seed["seed"] = int{3};
  CHECK(ExperimentConfig::from_json(int_seed).seed == 3);
  CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/config.json"), Error);

  json single = j;
  single.erase("amplitudes");
  single["amplitude"] = 0.03;
  CHECK(ExperimentConfig::from_json(single).amplitudes == std::vector<double>{0.03});

  const auto cfg = ExperimentConfig::from_json(burgers_scaling_config());
  REQUIRE(cfg.epsilons.size() == 4);
  CHECK(cfg.epsilons[0] == doctest::Approx(1e-5));
  CHECK(cfg.times == std::vector<double>{1.0});
}

TEST_CASE("datum families") {
  const auto b = systems::burgers(1.0);
  const json shock = {{"family", "single_shock"}, {"anchor", "right"}, {"base", {1.0}}};
  const auto d = make_datum(b, shock, 0.1, 0);
  CHECK(d.eval(-1.0)(0) == doctest::Approx(1.1));
  CHECK(d.eval(1.0)(0) == 1.0);
  const auto r = make_datum(b, {{"family", "single_rarefaction"}}, 0.05, 0);
  CHECK(r.eval(1.0)(0) - r.eval(-1.0)(0) == doctest::Approx(0.05));
  const auto bump = make_datum(b, {{"family", "bump"}, {"width", 2.0}}, 0.05, 0);
  CHECK(bump.breakpoints() == std::vector<double>{0.0, 2.0});
  CHECK(bump.total_variation() == doctest::Approx(0.1));

  const auto p = systems::psystem_speed({});
  const auto ramp = make_datum(p, {{"family", "rarefactions"}, {"sizes", {1.0, 1.0}}, {"steps", 4}}, 0.08, 0);
  CHECK(ramp.breakpoints().size() == 4);
  const auto random1 = make_datum(p, {{"family", "riemann"}, {"base", "random"}}, 0.02, 5);
  const auto random2 = make_datum(p, {{"family", "riemann"}, {"base", "random"}}, 0.02, 5);
  const auto random3 = make_datum(p, {{"family", "riemann"}, {"base", "random"}}, 0.02, 6);
  CHECK(random1.values() == random2.values());
  CHECK(random1.values() != random3.values());

  CHECK_THROWS_AS(make_datum(b, {{"family", "nope"}}, 0.1, 0), Error);
  CHECK_THROWS_AS(make_datum(b, {{"family", "bump"}}, 0.5, 0), Error);
  CHECK_THROWS_AS(make_datum(b, {{"family", "single_shock"}, {"anchor", "middle"}}, 0.01, 0), Error);
}

TEST_CASE("single comparison reproduces the scalar shock distance") {
  const auto rep = run_compare(ExperimentConfig::from_json(burgers_shock_config()));
  REQUIRE_FALSE(rep.error);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].distance == doctest::Approx(7.94e-5).epsilon(5e-6 / 7.94e-5));
  CHECK(rep.rows[0].tv == doctest::Approx(0.1));
  CHECK(rep.rows[0].tv_neg == doctest::Approx(0.1));
  CHECK(rep.rows[0].diam == doctest::Approx(0.1));
  CHECK(rep.exit_status() == 0);

  json same = burgers_shock_config();
  same["pair"] = {{"pair", "burgers"}, {"m", 1}, {"m_tilde", 1}};
  CHECK(run_compare(ExperimentConfig::from_json(same)).rows.at(0).distance <= 1e-12);
}

TEST_CASE("report files") {
  TempDir one("one");
  auto rep = run_compare(ExperimentConfig::from_json(burgers_shock_config()));
  emit_report(rep, one.path.string());
  const auto csv = lines(slurp(one.path / "results.csv"));
  REQUIRE(csv.size() == 2);
  CHECK(csv[0] == "t,tv,tv_neg,diam,distance,slope");
  CHECK(csv[1].substr(csv[1].size() - 3) == ",NA");
  const auto meta = json::parse(slurp(one.path / "meta.json"));
  CHECK(meta.at("kind") == "compare");
  CHECK(meta.at("slope").is_null());
  CHECK(meta.at("error").is_null());
  CHECK(lines(slurp(one.path / "fronts_left.csv")).size() == 2);

  TempDir empty("empty");
  ComparisonReport blank;
  emit_report(blank, empty.path.string());
  CHECK(lines(slurp(empty.path / "results.csv")).size() == 1);
  CHECK(lines(slurp(empty.path / "fronts_right.csv")) ==
        std::vector<std::string>{"id,t_start,x_start,t_end,x_end,kind,family,size,speed"});

  TempDir four("four");
  const auto scaling = run_scaling(ExperimentConfig::from_json(burgers_scaling_config()));
  emit_report(scaling, four.path.string());
  CHECK(lines(slurp(four.path / "results.csv")).size() == 5);
  const auto smeta = json::parse(slurp(four.path / "meta.json"));
  CHECK(smeta.at("slope").get<double>() == doctest::Approx(3.0).epsilon(0.05 / 3.0));
  CHECK(smeta.at("regime") == "cubic");
  CHECK(smeta.at("rows").size() == 4);
}

TEST_CASE("reports are byte-identical across runs") {
  json cfg = json::parse(R"({
    "pair": "psystem",
    "datum": {"family": "bump", "base": "random", "direction": [1.0, -0.5], "width": 0.5},
    "amplitudes": [0.06],
    "epsilon": 0.01,
    "cone": {"a": -1.5, "b": 1.5},
    "t": 0.4,
    "times": [0.2, 0.4],
    "seed": 42
  })");
  TempDir a("det_a"), b("det_b");
  auto first = run_compare(ExperimentConfig::from_json(cfg));
  auto second = run_compare(ExperimentConfig::from_json(cfg));
  first.extra.erase("runtime_left_s");
  first.extra.erase("runtime_right_s");
  second.extra.erase("runtime_left_s");
  second.extra.erase("runtime_right_s");
  emit_report(first, a.path.string());
  emit_report(second, b.path.string());
  for (const char* name : {"results.csv", "meta.json", "fronts_left.csv", "fronts_right.csv"})
    CHECK(slurp(a.path / name) == slurp(b.path / name));
  CHECK(first.rows.size() == 2);
}

TEST_CASE("scaling regimes") {
  json traffic = json::parse(R"({
    "pair": "traffic",
    "datum": {"family": "single_shock", "wave_family": 1},
    "amplitudes": [0.08, 0.04, 0.02, 0.01],
    "epsilon": 0.001,
    "cone": {"a": -1.0, "b": 1.0},
    "t": 0.5
  })");
  const auto rep = run_scaling(ExperimentConfig::from_json(traffic));
  CHECK(rep.regime == "degenerate");
  CHECK_FALSE(rep.fit);
  CHECK(rep.exit_status() == 0);

  json few = burgers_scaling_config();
  few["amplitudes"] = {0.1, 0.05};
  few["epsilon"] = 1e-5;
  CHECK_THROWS_AS(run_scaling(ExperimentConfig::from_json(few)), Error);

  // Distances just above and below the floor cannot be fitted.
  json mixed = burgers_scaling_config();
  mixed["epsilon"] = 2e-6;
  const auto m = run_scaling(ExperimentConfig::from_json(mixed));
  REQUIRE(m.error);
  CHECK(m.error->code == "DegenerateFit");
  CHECK(m.exit_status() == 3);
}
