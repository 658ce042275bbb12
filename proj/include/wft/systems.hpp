#pragma once

#include "wft/system.hpp"

#include <nlohmann/json.hpp>

namespace wft::systems {

// Scalar ∂ₜ(u^m/m) + ∂ₓ(u^{m+1}/(m+1)) = 0 on [0.9, 1.1]; λ = u.
SystemDef burgers(double m);
SystemPair burgers_pair(double m, double m_tilde);

/// Polytropic pressure p(ρ) = (k²/γ) ρ^γ.
struct Polytropic {
  double k = 1.0;
  double gamma = 2.0;

  double p(double rho) const;
  double dp(double rho) const;        // p′(ρ) = k² ρ^{γ−1}
  double sound(double rho) const;     // √p′
  double big_p(double rho) const;     // P with P′ = p′/ρ
  double rho_of_sound(double c) const;
};

/// p-system with conserved speed: g = (ρ, v), f = (ρv, v²/2 + P(ρ)).
SystemDef psystem_speed(Polytropic law);
/// Classical p-system: g = (ρ, ρv), f = (ρv, ρv² + p(ρ)).
SystemDef psystem_momentum(Polytropic law);
SystemPair psystem_pair(Polytropic law = {});

/// γ-law internal energy e(ρ,s) = eˢρ^{γ−1}/(γ−1), p = eˢρ^γ; u = (ρ, v, s).
SystemDef euler_entropy(double gamma);  // conserves (ρ, ρv, ρs)
SystemDef euler_energy(double gamma);   // conserves (ρ, ρv, ρv²/2 + ρe)
SystemPair euler_pair(double gamma = 2.0);

/// Isentropic 2×2 system at frozen entropy s̄ (momentum form, p = e^{s̄}ρ^γ).
SystemDef isentropic(double gamma, double s_bar);

/// Constant-entropy lifting between the isentropic 2×2 system and the two 3×3 Euler forms.
struct IsentropicEmbedding {
  SystemDef reduced;
  SystemDef entropy_form;
  SystemDef energy_form;
  double s_bar = 0.0;

  State lift(const State& rho_v) const;
  PiecewiseConstantFn lift(const PiecewiseConstantFn& rho_v) const;
  PiecewiseConstantFn project(const PiecewiseConstantFn& rho_v_s) const;
};
IsentropicEmbedding isentropic_embed(double gamma = 2.0, double s_bar = 0.0);

/// Traffic model with ψ(ρ) = 1 − ρ conserved as (ρ, ρ q(w)), q(w) = w^power.
SystemDef traffic(double q_power);
SystemPair traffic_pair(double q_power = 1.0, double q_tilde_power = 2.0);

/// Builds a pair from {"pair": id, ...params}; ids: burgers, psystem, euler, traffic.
SystemPair make_pair(const nlohmann::json& spec);
/// Accepts either a bare id ("burgers") or a JSON object string.
SystemPair make_pair(const std::string& id_or_json);
IsentropicEmbedding make_embedding(const nlohmann::json& spec);

} // namespace wft::systems
