#include "wft/experiments.hpp"

#include "wft/error.hpp"
#include "wft/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <random>

namespace wft {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::BadConfig, msg); }

double positive_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) bad(std::string("config field '") + key + "' must be a number");
  const double v = j.at(key).get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) bad(std::string("config field '") + key + "' must be positive");
  return v;
}

ErrorRecord record(const Error& e) {
  return {std::string(to_string(e.code())), e.what(), exit_status(e.code())};
}

State base_state(const SystemDef& sys, const nlohmann::json& spec, std::uint64_t seed) {
  if (!spec.contains("base")) return sys.domain.center();
  const auto& b = spec.at("base");
  if (b.is_string()) {
    if (b.get<std::string>() != "random") bad("datum base must be a state or \"random\"");
    const DomainBox inner = sys.domain.shrunk(spec.value("random_box", 0.5));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    State t(sys.n);
    for (int k = 0; k < sys.n; ++k) t(k) = unit(rng);
    return inner.point(t);
  }
  State u = state_from_json(b);
  if (u.size() != sys.n) bad("datum base has the wrong dimension");
  return u;
}

State vector_field(const SystemDef& sys, const nlohmann::json& spec, const char* key, double fill) {
  if (!spec.contains(key)) return State::Constant(sys.n, fill);
  State v = state_from_json(spec.at(key));
  if (v.size() != sys.n) bad(std::string("datum field '") + key + "' has the wrong dimension");
  return v;
}

int wave_family(const SystemDef& sys, const nlohmann::json& spec) {
  const int i = spec.value("wave_family", 1);
  if (i < 1 || i > sys.n) bad("datum wave_family out of range");
  return i;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) bad("config must be a JSON object");
  ExperimentConfig c;
  c.raw = j;
  if (!j.contains("pair")) bad("config needs a 'pair'");
  c.pair_spec = j.at("pair").is_string() ? nlohmann::json{{"pair", j.at("pair")}} : j.at("pair");
  if (!j.contains("datum") || !j.at("datum").is_object() || !j.at("datum").contains("family"))
    bad("config needs a 'datum' object with a 'family'");
  c.datum_spec = j.at("datum");

  nlohmann::json amps;
  if (c.datum_spec.contains("amplitudes")) amps = c.datum_spec.at("amplitudes");
  else if (j.contains("amplitudes")) amps = j.at("amplitudes");
  else if (c.datum_spec.contains("amplitude")) amps = nlohmann::json::array({c.datum_spec.at("amplitude")});
  else if (j.contains("amplitude")) amps = nlohmann::json::array({j.at("amplitude")});
  else amps = nlohmann::json::array({0.1});
  if (!amps.is_array() || amps.empty()) bad("amplitudes must be a nonempty array");
  for (const auto& a : amps) {
    if (!a.is_number() || !(a.get<double>() > 0.0)) bad("amplitudes must be positive numbers");
    if (!c.amplitudes.empty() && !(a.get<double>() < c.amplitudes.back())) bad("amplitudes must be strictly decreasing");
    c.amplitudes.push_back(a.get<double>());
  }

  if (!j.contains("epsilon")) bad("config needs an 'epsilon'");
  const auto& e = j.at("epsilon");
  if (e.is_number()) {
    c.epsilons.assign(c.amplitudes.size(), positive_number(j, "epsilon"));
  } else if (e.is_array()) {
    if (e.size() != c.amplitudes.size()) bad("epsilon list must match the amplitudes");
    for (const auto& v : e) {
      if (!v.is_number() || !(v.get<double>() > 0.0)) bad("epsilon entries must be positive");
      c.epsilons.push_back(v.get<double>());
    }
  } else if (e.is_object() && e.value("rule", "") == "cubic") {
    const double factor = positive_number(e, "factor");
    for (double a : c.amplitudes) c.epsilons.push_back(factor * a * a * a);
  } else {
    bad("epsilon must be a number, a list, or {\"rule\": \"cubic\", \"factor\": f}");
  }

  if (!j.contains("cone") || !j.at("cone").is_object()) bad("config needs a 'cone' object");
  const auto& cone = j.at("cone");
  if (!cone.contains("a") || !cone.contains("b") || !cone.at("a").is_number() || !cone.at("b").is_number())
    bad("cone needs numeric 'a' and 'b'");
  c.a = cone.at("a").get<double>();
  c.b = cone.at("b").get<double>();
  if (!(c.a < c.b)) bad("cone requires a < b");
  c.t = positive_number(j, "t");
  if (j.contains("times")) {
    for (const auto& v : j.at("times")) {
      if (!v.is_number() || v.get<double>() < 0.0 || v.get<double>() > c.t) bad("times must lie in [0, t]");
      if (!c.times.empty() && !(v.get<double>() > c.times.back())) bad("times must be increasing");
      c.times.push_back(v.get<double>());
    }
  }
  if (c.times.empty()) c.times.push_back(c.t);
  c.output_dir = j.value("output_dir", std::string());
  if (j.contains("seed")) {
    const auto& seed = j.at("seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0))
      bad("seed must be a nonnegative integer");
    c.seed = seed.get<std::uint64_t>();
  }
  if (j.contains("tv_factor")) c.tv_factor = positive_number(j, "tv_factor");
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad("config " + path + ": " + e.what());
  }
  return from_json(j);
}

PiecewiseConstantFn make_datum(const SystemDef& sys, const nlohmann::json& spec, double amplitude,
                               std::uint64_t seed) {
  const std::string family = spec.value("family", "");
  const State base = base_state(sys, spec, seed);
  const double x = spec.value("x", 0.0);
  std::vector<double> xs;
  std::vector<State> vals{base};

  if (family == "single_shock" || family == "single_rarefaction") {
    const int i = wave_family(sys, spec);
    const double sigma = family == "single_shock" ? -amplitude : amplitude;
    const std::string anchor = spec.value("anchor", "left");
    xs.push_back(x);
    if (anchor == "left") {
      vals.push_back(lax_curve(sys, i, base, sigma));
    } else if (anchor == "right") {
      vals.front() = left_state_for(sys, i, base, sigma);
      vals.push_back(base);
    } else {
      bad("datum anchor must be 'left' or 'right'");
    }
  } else if (family == "riemann") {
    xs.push_back(x);
    if (spec.contains("sizes"))
      vals.push_back(compose_lax_curves(sys, base, amplitude * vector_field(sys, spec, "sizes", 0.0)));
    else
      vals.push_back(base + amplitude * vector_field(sys, spec, "direction", 1.0));
  } else if (family == "bump") {
    const double width = spec.value("width", 1.0);
    if (!(width > 0.0)) bad("bump width must be positive");
    xs = {x, x + width};
    vals.push_back(base + amplitude * vector_field(sys, spec, "direction", 1.0));
    vals.push_back(base);
  } else if (family == "rarefactions") {
    const State sizes = vector_field(sys, spec, "sizes", 1.0);
    if ((sizes.array() < 0.0).any()) bad("rarefactions datum needs nonnegative sizes");
    const int steps = spec.value("steps", 1);
    const double width = spec.value("width", 1.0);
    if (steps < 1 || !(width >= 0.0)) bad("rarefactions datum needs steps >= 1 and width >= 0");
    for (int k = 0; k < steps; ++k) {
      xs.push_back(x + (steps > 1 ? width * k / (steps - 1) : 0.0));
      vals.push_back(compose_lax_curves(sys, vals.back(), amplitude / steps * sizes));
    }
  } else {
    bad("unknown datum family '" + family + "'");
  }
  for (const auto& v : vals)
    if (!sys.domain.contains(v)) bad("datum leaves the domain box of " + sys.name);
  return {std::move(xs), std::move(vals)};
}

namespace {

FrontTrackingOptions run_options(const SystemPair& pair, double epsilon, const ConeDomain& cone, double tv_factor) {
  FrontTrackingOptions o;
  o.epsilon = epsilon;
  o.lambda_hat = cone.lambda_hat();
  o.tv_factor = tv_factor;
  o.length_scale = cone.b() - cone.a();
  o.cone = cone;
  (void)pair;
  return o;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

PairedRuns run_pair(const SystemPair& pair, const PiecewiseConstantFn& datum, double epsilon, const ConeDomain& cone,
                    double t, double tv_factor) {
  const FrontTrackingOptions o = run_options(pair, epsilon, cone, tv_factor);
  PairedRuns runs;
  auto start = std::chrono::steady_clock::now();
  runs.left = std::make_shared<FrontTrackingRun>(FrontTrackingRun::build(pair.left, datum, o));
  runs.left->advance_to(t);
  runs.runtime_left = seconds_since(start);
  start = std::chrono::steady_clock::now();
  runs.right = std::make_shared<FrontTrackingRun>(FrontTrackingRun::build(pair.right, datum, o));
  runs.right->advance_to(t);
  runs.runtime_right = seconds_since(start);
  return runs;
}

ResultRow measure(const SystemPair& pair, const PiecewiseConstantFn& datum, const PairedRuns& runs, double t,
                  const ConeDomain& cone) {
  const Interval i0 = cone.at(0.0);
  ResultRow row;
  row.epsilon = runs.left->epsilon();
  row.t = t;
  row.tv = datum.total_variation(i0);
  row.tv_neg = negative_variation(pair.left, datum, i0);
  row.diam = std::max(diam(*runs.left, t, cone), diam(*runs.right, t, cone));
  row.distance = cone_l1_distance(*runs.left, *runs.right, t, cone);
  row.floor = 10.0 * row.epsilon * row.tv + 1e-13;
  return row;
}

namespace {

nlohmann::json wave_measures(const SystemDef& sys, const PiecewiseConstantFn& datum, Interval i0) {
  nlohmann::json out = nlohmann::json::array();
  for (int i = 1; i <= sys.n; ++i) {
    const SignedAtomMeasure mu = wave_measure(sys, datum, i);
    out.push_back({{"family", i}, {"negative", mu.negative(i0)}, {"positive", mu.positive(i0)}});
  }
  return out;
}

} // namespace

ComparisonReport run_compare(const ExperimentConfig& cfg) {
  ComparisonReport rep;
  rep.kind = "compare";
  rep.config = cfg.raw;
  const SystemPair pair = systems::make_pair(cfg.pair_spec);
  const ConeDomain cone(cfg.a, cfg.b, pair.lambda_hat());
  cone.at(cfg.t);
  const double amplitude = cfg.amplitudes.front();
  const double eps = cfg.epsilons.front();
  const PiecewiseConstantFn datum = make_datum(pair.left, cfg.datum_spec, amplitude, cfg.seed);
  rep.extra["datum"] = datum.to_json();
  rep.extra["lambda_hat"] = cone.lambda_hat();

  const FrontTrackingOptions o = run_options(pair, eps, cone, cfg.tv_factor);
  PairedRuns runs;
  try {
    rep.extra["wave_measures"] = wave_measures(pair.left, datum, cone.at(0.0));
    runs.left = std::make_shared<FrontTrackingRun>(FrontTrackingRun::build(pair.left, datum, o));
    runs.right = std::make_shared<FrontTrackingRun>(FrontTrackingRun::build(pair.right, datum, o));
    rep.left_run = runs.left;
    rep.right_run = runs.right;
    for (double t : cfg.times) {
      auto start = std::chrono::steady_clock::now();
      runs.left->advance_to(t);
      runs.runtime_left += seconds_since(start);
      start = std::chrono::steady_clock::now();
      runs.right->advance_to(t);
      runs.runtime_right += seconds_since(start);
      ResultRow row = measure(pair, datum, runs, t, cone);
      row.amplitude = amplitude;
      rep.rows.push_back(row);
    }
  } catch (const Error& e) {
    rep.error = record(e);
  }
  if (runs.left) rep.extra["diagnostics_left"] = runs.left->diagnostics().to_json();
  if (runs.right) rep.extra["diagnostics_right"] = runs.right->diagnostics().to_json();
  rep.extra["runtime_left_s"] = runs.runtime_left;
  rep.extra["runtime_right_s"] = runs.runtime_right;
  return rep;
}

ComparisonReport run_scaling(const ExperimentConfig& cfg) {
  if (cfg.amplitudes.size() < 4) bad("scaling needs at least 4 amplitudes");
  ComparisonReport rep;
  rep.kind = "scaling";
  rep.config = cfg.raw;
  const SystemPair pair = systems::make_pair(cfg.pair_spec);
  const ConeDomain cone(cfg.a, cfg.b, pair.lambda_hat());
  cone.at(cfg.t);

  struct Outcome {
    std::optional<ResultRow> row;
    std::optional<ErrorRecord> error;
  };
  std::vector<std::future<Outcome>> jobs;
  for (std::size_t k = 0; k < cfg.amplitudes.size(); ++k) {
    jobs.push_back(std::async(std::launch::async, [&, k]() {
      Outcome out;
      try {
        const PiecewiseConstantFn datum = make_datum(pair.left, cfg.datum_spec, cfg.amplitudes[k], cfg.seed);
        const PairedRuns runs = run_pair(pair, datum, cfg.epsilons[k], cone, cfg.t, cfg.tv_factor);
        ResultRow row = measure(pair, datum, runs, cfg.t, cone);
        row.amplitude = cfg.amplitudes[k];
        out.row = row;
      } catch (const Error& e) {
        out.error = record(e);
      }
      return out;
    }));
  }
  for (auto& j : jobs) {
    Outcome o = j.get();
    if (o.row) rep.rows.push_back(*o.row);
    if (o.error && !rep.error) rep.error = o.error;
  }
  if (rep.error) return rep;

  const std::size_t below = static_cast<std::size_t>(
      std::count_if(rep.rows.begin(), rep.rows.end(), [](const ResultRow& r) { return r.distance < r.floor; }));
  if (below == rep.rows.size()) {
    rep.regime = "degenerate";
    return rep;
  }
  if (below > 0) {
    rep.error = ErrorRecord{"DegenerateFit", "some distances fall below the solver floor",
                            exit_status(ErrorCode::DegenerateFit)};
    return rep;
  }
  const std::size_t first = rep.rows.size() >= 6 ? rep.rows.size() - 3 : 0;
  std::vector<double> xs, ys;
  for (std::size_t k = first; k < rep.rows.size(); ++k) {
    xs.push_back(rep.rows[k].tv);
    ys.push_back(rep.rows[k].distance);
  }
  try {
    rep.fit = fit_loglog(xs, ys);
    rep.regime = rep.fit->slope >= 2.85 ? "cubic" : "sub_cubic";
    rep.extra["fit_rows"] = {first, rep.rows.size()};
  } catch (const Error& e) {
    rep.error = record(e);
  }
  return rep;
}

ComparisonReport run_embedding(const nlohmann::json& cfg) {
  if (!cfg.is_object()) bad("embedding config must be an object");
  ComparisonReport rep;
  rep.kind = "embedding";
  rep.config = cfg;
  const systems::IsentropicEmbedding emb = systems::make_embedding(cfg);
  const double eps = positive_number(cfg, "epsilon");
  const double t = positive_number(cfg, "t");
  const double margin = cfg.value("margin", 1.5);
  if (!cfg.contains("cone")) bad("embedding config needs a 'cone'");
  const double a = cfg.at("cone").value("a", -1.0), b = cfg.at("cone").value("b", 1.0);
  if (!(a < b)) bad("cone requires a < b");
  if (!cfg.contains("scenarios") || !cfg.at("scenarios").is_array() || cfg.at("scenarios").size() < 2)
    bad("embedding config needs at least 2 scenarios (calibration first)");
  const std::uint64_t seed = cfg.value("seed", std::uint64_t{0});

  const double lambda_hat =
      std::max({emb.reduced.lambda_hat, emb.entropy_form.lambda_hat, emb.energy_form.lambda_hat});
  const ConeDomain cone(a, b, lambda_hat);
  cone.at(t);
  const Interval i0 = cone.at(0.0), it = cone.at(t);
  FrontTrackingOptions o;
  o.epsilon = eps;
  o.lambda_hat = lambda_hat;
  o.length_scale = b - a;
  o.cone = cone;
  o.tv_factor = cfg.value("tv_factor", 4.0);

  nlohmann::json scenarios = nlohmann::json::array();
  double constant = 0.0;
  bool all_pass = true;
  try {
    std::size_t index = 0;
    for (const auto& sc : cfg.at("scenarios")) {
      if (!sc.contains("datum") || !sc.contains("amplitude")) bad("each scenario needs 'datum' and 'amplitude'");
      const double amplitude = sc.at("amplitude").get<double>();
      const PiecewiseConstantFn d2 = make_datum(emb.reduced, sc.at("datum"), amplitude, seed + index);
      const PiecewiseConstantFn d3 = emb.lift(d2);

      FrontTrackingRun reduced = FrontTrackingRun::build(emb.reduced, d2, o);
      FrontTrackingRun entropy = FrontTrackingRun::build(emb.entropy_form, d3, o);
      FrontTrackingRun energy = FrontTrackingRun::build(emb.energy_form, d3, o);
      reduced.advance_to(t);
      entropy.advance_to(t);
      energy.advance_to(t);

      double s_dev = 0.0;
      for (const Front& f : entropy.history())
        s_dev = std::max({s_dev, std::abs(f.left(2) - emb.s_bar), std::abs(f.right(2) - emb.s_bar)});
      const PiecewiseConstantFn lifted = emb.lift(reduced.sample_at(t));
      const double lemma_distance = l1_distance(lifted, entropy.sample_at(t), it);
      const double distance = l1_distance(lifted, energy.sample_at(t), it);
      const double mu_neg = negative_variation(emb.reduced, d2, i0);
      const double diam0 = diam(d2, i0);
      const double scale = t * mu_neg * diam0 * diam0;
      if (!(scale > 0.0)) bad("embedding scenarios need shocks (positive negative variation)");

      nlohmann::json entry = {{"name", sc.value("name", "scenario " + std::to_string(index))},
                              {"amplitude", amplitude},
                              {"s_deviation", s_dev},
                              {"s_pass", s_dev <= 10.0 * eps},
                              {"lemma_distance", lemma_distance},
                              {"distance", distance},
                              {"mu_neg", mu_neg},
                              {"diam0", diam0},
                              {"ratio", distance / scale}};
      if (index == 0) {
        constant = distance / scale;
        entry["role"] = "calibration";
      } else {
        const double bound = margin * constant * scale;
        entry["role"] = "held_out";
        entry["bound"] = bound;
        entry["pass"] = distance <= bound;
        all_pass = all_pass && distance <= bound;
      }
      all_pass = all_pass && s_dev <= 10.0 * eps;
      scenarios.push_back(entry);

      ResultRow row;
      row.amplitude = amplitude;
      row.epsilon = eps;
      row.t = t;
      row.tv = d2.total_variation(i0);
      row.tv_neg = mu_neg;
      row.diam = diam0;
      row.distance = distance;
      row.floor = 10.0 * eps * row.tv + 1e-13;
      rep.rows.push_back(row);
      if (index == 0) {
        rep.left_run = std::make_shared<FrontTrackingRun>(std::move(reduced));
        rep.right_run = std::make_shared<FrontTrackingRun>(std::move(energy));
      }
      ++index;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadConfig) throw;
    rep.error = record(e);
    all_pass = false;
  }
  rep.extra["fitted_constant"] = constant;
  rep.extra["margin"] = margin;
  rep.extra["scenarios"] = scenarios;
  rep.extra["all_pass"] = all_pass;
  return rep;
}

} // namespace wft
