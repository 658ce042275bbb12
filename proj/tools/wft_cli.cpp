#include "wft/error.hpp"
#include "wft/experiments.hpp"
#include "wft/metrics.hpp"
#include "wft/systems.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wft::Error(wft::ErrorCode::Io, "cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw wft::Error(wft::ErrorCode::BadConfig, path + ": " + e.what());
  }
}

nlohmann::json parse_json_arg(const std::string& text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw wft::Error(wft::ErrorCode::BadConfig, std::string(what) + ": " + e.what());
  }
}

const wft::SystemDef& pick_side(const wft::SystemPair& pair, const std::string& side) {
  if (side == "left") return pair.left;
  if (side == "right") return pair.right;
  throw wft::Error(wft::ErrorCode::BadConfig, "side must be 'left' or 'right'");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int finish(const wft::ComparisonReport& rep, const std::string& dir) {
  if (!dir.empty()) wft::emit_report(rep, dir);
  nlohmann::json summary = {{"kind", rep.kind}, {"output_dir", dir}, {"rows", rep.rows.size()}};
  if (!rep.rows.empty()) summary["distance"] = rep.rows.back().distance;
  if (rep.fit) summary["slope"] = rep.fit->slope;
  if (!rep.regime.empty()) summary["regime"] = rep.regime;
  if (rep.extra.contains("all_pass")) summary["all_pass"] = rep.extra.at("all_pass");
  if (rep.error) {
    summary["error"] = rep.error->code;
    std::cerr << "wft: " << rep.error->code << ": " << rep.error->message << '\n';
  }
  std::cout << summary.dump(2) << '\n';
  if (!rep.error && rep.extra.value("all_pass", true) == false) return 2;
  return rep.exit_status();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-front tracking lab for paired conservation laws"};
  app.require_subcommand(1);

  std::string pair_id = "burgers", side = "left", left_json, right_json, datum_path, out_path, fronts_path, config_path,
              point_json, sigmas_json;
  double epsilon = 1e-3, horizon = 1.0;
  int grid = 21, family = 1;

  auto* riemann = app.add_subcommand("riemann", "Solve one Riemann problem and print the fan as JSON");
  riemann->add_option("--pair", pair_id, "Pair id or JSON spec")->required();
  riemann->add_option("--side", side, "Pair member: left or right");
  riemann->add_option("--left", left_json, "Left state (JSON)")->required();
  riemann->add_option("--right", right_json, "Right state (JSON)")->required();

  auto* evolve = app.add_subcommand("evolve", "Evolve a datum by front tracking and write the profile at t");
  evolve->add_option("--pair", pair_id, "Pair id or JSON spec")->required();
  evolve->add_option("--side", side, "Pair member: left or right");
  evolve->add_option("--datum", datum_path, "Piecewise constant datum (JSON file)")->required();
  evolve->add_option("--epsilon", epsilon, "Front tracking accuracy");
  evolve->add_option("--t", horizon, "Final time");
  evolve->add_option("--out", out_path, "Profile CSV (t,x_breakpoint,u1..un)")->required();
  evolve->add_option("--fronts", fronts_path, "Front history CSV");

  auto* delta = app.add_subcommand("delta", "Evaluate the Delta functional of a pair");
  delta->add_option("--pair", pair_id, "Pair id or JSON spec")->required();
  delta->add_option("--grid", grid, "Grid points per dimension");

  auto* kappa = app.add_subcommand("kappa", "Estimate shock-curve contact orders of a pair");
  kappa->add_option("--pair", pair_id, "Pair id or JSON spec")->required();
  kappa->add_option("--point", point_json, "Base state (JSON)")->required();
  kappa->add_option("--family", family, "Wave family (1-based)");
  kappa->add_option("--sigmas", sigmas_json, "Negative sizes (JSON array)");

  auto* compare = app.add_subcommand("compare", "Paired evolution from one config");
  compare->add_option("--config", config_path, "Experiment config (JSON)")->required();
  auto* scaling = app.add_subcommand("scaling", "Distance-vs-TV scaling study");
  scaling->add_option("--config", config_path, "Experiment config (JSON)")->required();
  auto* embed = app.add_subcommand("embed", "Isentropic embedding experiment");
  embed->add_option("--config", config_path, "Embedding config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  try {
    if (*riemann) {
      const wft::SystemPair pair = wft::systems::make_pair(pair_id);
      const wft::SystemDef& sys = pick_side(pair, side);
      const wft::State ul = wft::state_from_json(parse_json_arg(left_json, "--left"));
      const wft::State ur = wft::state_from_json(parse_json_arg(right_json, "--right"));
      std::cout << wft::solve_riemann(sys, ul, ur).to_json().dump(2) << '\n';
    } else if (*evolve) {
      const wft::SystemPair pair = wft::systems::make_pair(pair_id);
      const wft::SystemDef& sys = pick_side(pair, side);
      const auto datum = wft::PiecewiseConstantFn::from_json(read_json_file(datum_path));
      wft::FrontTrackingOptions o;
      o.epsilon = epsilon;
      o.lambda_hat = pair.lambda_hat();
      auto run = wft::FrontTrackingRun::build(sys, datum, o);
      run.advance_to(horizon);
      const auto snap = run.sample_at(horizon);
      std::ofstream out(out_path);
      if (!out) throw wft::Error(wft::ErrorCode::Io, "cannot write " + out_path);
      out << "t,x_breakpoint";
      for (int k = 1; k <= sys.n; ++k) out << ",u" << k;
      out << '\n';
      for (std::size_t j = 0; j < snap.values().size(); ++j) {
        out << fmt(horizon) << ',' << (j == 0 ? std::string("-inf") : fmt(snap.breakpoints()[j - 1]));
        for (int k = 0; k < sys.n; ++k) out << ',' << fmt(snap.values()[j](k));
        out << '\n';
      }
      if (!fronts_path.empty()) {
        std::ofstream fr(fronts_path);
        if (!fr) throw wft::Error(wft::ErrorCode::Io, "cannot write " + fronts_path);
        run.write_fronts_csv(fr);
      }
      std::cout << run.diagnostics().to_json().dump(2) << '\n';
    } else if (*delta) {
      std::cout << wft::delta_functional(wft::systems::make_pair(pair_id), grid).to_json().dump(2) << '\n';
    } else if (*kappa) {
      const wft::SystemPair pair = wft::systems::make_pair(pair_id);
      const wft::State u = wft::state_from_json(parse_json_arg(point_json, "--point"));
      std::vector<double> sigmas{-0.1, -0.05, -0.02, -0.01, -0.005, -0.002, -0.001};
      if (!sigmas_json.empty()) sigmas = parse_json_arg(sigmas_json, "--sigmas").get<std::vector<double>>();
      std::cout << wft::kappa_estimate(pair, u, family, sigmas).to_json().dump(2) << '\n';
    } else if (*compare) {
      const auto cfg = wft::ExperimentConfig::load(config_path);
      return finish(wft::run_compare(cfg), cfg.output_dir);
    } else if (*scaling) {
      const auto cfg = wft::ExperimentConfig::load(config_path);
      return finish(wft::run_scaling(cfg), cfg.output_dir);
    } else if (*embed) {
      const nlohmann::json cfg = read_json_file(config_path);
      return finish(wft::run_embedding(cfg), cfg.value("output_dir", std::string()));
    }
  } catch (const wft::Error& e) {
    std::cerr << "wft: " << wft::to_string(e.code()) << ": " << e.what() << '\n';
    return wft::exit_status(e.code());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "wft: BadConfig: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "wft: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
