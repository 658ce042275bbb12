#pragma once

#include "wft/fit.hpp"
#include "wft/front_tracking.hpp"
#include "wft/systems.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wft {

/// Parsed experiment configuration (JSON schema in docs/formats.md).
struct ExperimentConfig {
  nlohmann::json raw;
  nlohmann::json pair_spec;
  nlohmann::json datum_spec;
  std::vector<double> amplitudes;
  std::vector<double> epsilons;  // one per amplitude
  double a = -1.0;
  double b = 1.0;
  double t = 1.0;
  std::vector<double> times;  // report times; defaults to {t}
  std::string output_dir;
  std::uint64_t seed = 0;
  double tv_factor = 4.0;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::string& path);
};

/// Initial datum of the configured family at one amplitude.
PiecewiseConstantFn make_datum(const SystemDef& sys, const nlohmann::json& datum_spec, double amplitude,
                               std::uint64_t seed);

struct ResultRow {
  double amplitude = 0.0;
  double epsilon = 0.0;
  double t = 0.0;
  double tv = 0.0;      // TV(u₀; I₀)
  double tv_neg = 0.0;  // Σ_i μ_i⁻(I₀)
  double diam = 0.0;    // diameter over the trapezoid up to t (both runs)
  double distance = 0.0;
  double floor = 0.0;   // 10·ε·TV + 1e-13
};

struct ErrorRecord {
  std::string code;
  std::string message;
  int exit_status = 0;
};

struct ComparisonReport {
  std::string kind = "compare";
  nlohmann::json config;
  std::vector<ResultRow> rows;
  std::optional<LogLogFit> fit;
  std::string regime;  // scaling: cubic | sub_cubic | degenerate
  nlohmann::json extra = nlohmann::json::object();
  std::optional<ErrorRecord> error;
  std::shared_ptr<const FrontTrackingRun> left_run;
  std::shared_ptr<const FrontTrackingRun> right_run;

  int exit_status() const { return error ? error->exit_status : 0; }
};

struct PairedRuns {
  std::shared_ptr<FrontTrackingRun> left;
  std::shared_ptr<FrontTrackingRun> right;
  double runtime_left = 0.0;
  double runtime_right = 0.0;
};

/// Evolves both members of the pair from the same datum to time t.
PairedRuns run_pair(const SystemPair& pair, const PiecewiseConstantFn& datum, double epsilon, const ConeDomain& cone,
                    double t, double tv_factor = 4.0);

/// Metrics of two runs at time t on the cone.
ResultRow measure(const SystemPair& pair, const PiecewiseConstantFn& datum, const PairedRuns& runs, double t,
                  const ConeDomain& cone);

ComparisonReport run_compare(const ExperimentConfig& cfg);
ComparisonReport run_scaling(const ExperimentConfig& cfg);

/// Three-way isentropic embedding experiment; config schema in docs/formats.md.
ComparisonReport run_embedding(const nlohmann::json& cfg);

/// Writes results.csv, meta.json, fronts_left.csv and fronts_right.csv into dir.
void emit_report(const ComparisonReport& report, const std::string& dir);

} // namespace wft
