#pragma once

#include "wft/system.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace wft {

enum class WaveKind { Shock, Rarefaction, Contact, NonPhysical };

std::string to_string(WaveKind kind);

/// One wave of a Riemann fan. `family` is 1-based; non-physical waves use n + 1.
struct Wave {
  int family = 1;
  double size = 0.0;
  WaveKind kind = WaveKind::Shock;
  State left;
  State right;
  double speed_lo = 0.0;
  double speed_hi = 0.0;
};

struct RiemannFan {
  std::vector<Wave> waves;
  State sizes;  // E(u_l, u_r), zero entries for absent families
  State left;
  State right;

  nlohmann::json to_json() const;
};

/// Integral curve of the normalized r_family by classical RK4 over [0, sigma].
State integral_curve(const SystemDef& sys, int family, const State& u, double sigma, int steps = 64);

/// Rarefaction branch: closed form when registered (genuinely nonlinear families), else RK4.
State rarefaction_curve(const SystemDef& sys, int family, const State& u, double sigma);

/// Shock branch (sigma < 0) of a genuinely nonlinear family: the registered Hugoniot locus is
/// solved for the λ-increment parameter; without one, the generic RH solver is used.
State shock_curve(const SystemDef& sys, int family, const State& u, double sigma);

/// Hugoniot state from RH alone: Newton on (d, Λ) with S = u + σd, falling back to continuation
/// in steps of 1e-3 when the direct corrector fails.
State shock_curve_generic(const SystemDef& sys, int family, const State& u, double sigma);

/// Lax curve ψ_family(σ)(u).
State lax_curve(const SystemDef& sys, int family, const State& u, double sigma);

/// ψ_n(σ_n)∘…∘ψ_1(σ_1)(u).
State compose_lax_curves(const SystemDef& sys, const State& u, const State& sizes);

struct ShockSpeed {
  double speed;
  double residual;  // ‖Λ(g(s2)−g(u)) − (f(s2)−f(u))‖∞
};

/// Least-squares RH speed; exact quotient for scalar systems.
ShockSpeed shock_speed(const SystemDef& sys, const State& u, const State& s2);

struct RiemannOptions {
  double tolerance = 1e-13;
  int max_iterations = 60;
  double fd_step = 1e-7;
};

RiemannFan solve_riemann(const SystemDef& sys, const State& u_l, const State& u_r, const RiemannOptions& opts = {});

/// Self-similar value at ξ = x/t.
State fan_eval(const SystemDef& sys, const RiemannFan& fan, double xi);

/// Builds a single wave between two states already joined by one Lax curve of `family`.
Wave make_wave(const SystemDef& sys, int family, double size, const State& left, const State& right);

/// Wave size measured in the family-th Riemann coordinate (rich systems only).
double riemann_coordinate_size(const SystemDef& sys, int family, const State& left, const State& right);

/// The state u_l with ψ_family(σ)(u_l) = u_right.
State left_state_for(const SystemDef& sys, int family, const State& u_right, double sigma);

} // namespace wft
