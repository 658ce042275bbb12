#pragma once

#include "wft/front_tracking.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace wft {

/// Atoms (x, signed mass) of the i-th wave measure of piecewise constant data.
struct SignedAtomMeasure {
  int family = 1;
  std::vector<std::pair<double, double>> atoms;

  double positive(std::optional<Interval> window = std::nullopt) const;
  double negative(std::optional<Interval> window = std::nullopt) const;
  double total_variation(std::optional<Interval> window = std::nullopt) const {
    return positive(window) + negative(window);
  }
  double mass(std::optional<Interval> window = std::nullopt) const { return positive(window) - negative(window); }
};

/// One atom per breakpoint with mass E_i(u(x−), u(x+)) in the solver's λ-parametrization.
SignedAtomMeasure wave_measure(const SystemDef& sys, const PiecewiseConstantFn& u, int family);

/// Σ_i μ_i⁻ over the window.
double negative_variation(const SystemDef& sys, const PiecewiseConstantFn& u,
                          std::optional<Interval> window = std::nullopt);

/// ∫ ‖u1 − u2‖₁ dx over the window, exact for piecewise constant functions.
double l1_distance(const PiecewiseConstantFn& u1, const PiecewiseConstantFn& u2, Interval window);

/// Distance of two runs over I_t.
double cone_l1_distance(const FrontTrackingRun& r1, const FrontTrackingRun& r2, double t, const ConeDomain& cone);

/// ℓ¹ diameter of a finite set of states.
double diameter(const std::vector<State>& states);

/// ℓ¹ diameter of the values taken on the window (whole line if absent).
double diam(const PiecewiseConstantFn& u, std::optional<Interval> window = std::nullopt);

/// ℓ¹ diameter of the values taken by a run on the trapezoid {(s, x): s <= t, x ∈ I_s}.
double diam(const FrontTrackingRun& run, double t, const ConeDomain& cone);

struct DeltaReport {
  double value = 0.0;
  State argmax;
  int family = 0;
  int grid = 0;
  std::string normalization;

  nlohmann::json to_json() const;
};

/// sup_u max_i |Dλ_i·r_i| ‖[(Dg̃)⁻¹D²g̃ − (Dg)⁻¹D²g](r_i, r_i)‖₁ over a tensor grid of the domain box.
DeltaReport delta_functional(const SystemPair& pair, int grid);

struct KappaEstimate {
  std::vector<double> sigmas;
  std::vector<double> state_differences;
  std::vector<double> speed_differences;
  double state_ratio_max = 0.0;  // max ‖S − S̃‖₁ / |σ|³
  double speed_ratio_max = 0.0;  // max |Λ − Λ̃| / σ²
  std::optional<double> state_slope;
  std::optional<double> speed_slope;

  nlohmann::json to_json() const;
};

/// Shock-curve and shock-speed contact between the two members of a pair at u along family i.
KappaEstimate kappa_estimate(const SystemPair& pair, const State& u, int family, const std::vector<double>& sigmas);

/// Υ of the run's current configuration.
double interaction_potential(const FrontTrackingRun& run);

/// ‖∫_{I_t} g(u(t)) − ∫_{I_0} g(u(0)) + ∫_0^t boundary fluxes‖₁ for the shrinking cone.
double conservation_defect(const FrontTrackingRun& run, double t, const ConeDomain& cone);

/// 2 / (inf|g′| inf|g̃′|) · sup|f″g̃″ − f̃″g″| over the domain of a scalar pair.
double scalar_sharp_constant(const SystemPair& pair, int samples = 2001);

} // namespace wft
