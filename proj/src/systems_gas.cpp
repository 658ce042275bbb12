#include "wft/error.hpp"
#include "wft/systems.hpp"

#include <cmath>

namespace wft::systems {

namespace {

double sgn(double x) { return x < 0.0 ? -1.0 : (x > 0.0 ? 1.0 : 0.0); }

bool positive_density(const State& u) { return u(0) > 0.0 && u.allFinite(); }

DomainBox gas_box_2() { return {make_state({0.8, -0.2}), make_state({1.2, 0.2}), make_state({1.0, 0.0})}; }
DomainBox gas_box_3() {
  return {make_state({0.8, -0.2, -0.1}), make_state({1.2, 0.2, 0.1}), make_state({1.0, 0.0, 0.0})};
}

// Acoustic families shared by every polytropic 2×2 form: λ = v ∓ c, r = (∓ρ, c)/(c(γ+1)/2).
EigenData acoustic_eigen(const Polytropic& law, const State& u) {
  const double rho = u(0), v = u(1), c = law.sound(rho);
  const double scale = c * (law.gamma + 1.0) / 2.0;
  EigenData ed;
  ed.lambdas = make_state({v - c, v + c});
  ed.right.resize(2, 2);
  ed.right << -rho / scale, rho / scale, c / scale, c / scale;
  ed.left = ed.right.inverse();
  return ed;
}

// Isentropic rarefaction along an acoustic family: Riemann invariant v ± 2c/(γ−1) frozen,
// λ advanced by σ.
State acoustic_rarefaction(const Polytropic& law, double rho, double v, bool forward, double sigma) {
  const double ratio = (law.gamma - 1.0) / (law.gamma + 1.0);
  const double c = law.sound(rho);
  const double h = 2.0 * c / (law.gamma - 1.0);
  const double c_new = forward ? c + sigma * ratio : c - sigma * ratio;
  if (!(c_new > 0.0)) throw Error(ErrorCode::DomainExit, "rarefaction reaches vacuum");
  const double h_new = 2.0 * c_new / (law.gamma - 1.0);
  const double v_new = forward ? (v - h) + h_new : (v + h) - h_new;
  return make_state({law.rho_of_sound(c_new), v_new});
}

// Density on the Hugoniot locus for parameter τ: ρ + τ·r_ρ.
double locus_density(const Polytropic& law, double rho, int family, double tau) {
  const double scale = law.sound(rho) * (law.gamma + 1.0) / 2.0;
  return rho + tau * (family == 1 ? -rho : rho) / scale;
}

double momentum_locus_velocity(double rho, double p, double v, double rho_s, double p_s, double tau) {
  const double arg = (p_s - p) * (rho_s - rho) / (rho * rho_s);
  return v + sgn(tau) * std::sqrt(std::max(arg, 0.0));
}

SystemDef polytropic_common(const Polytropic& law) {
  if (!(law.gamma > 1.0) || !(law.k > 0.0)) throw Error(ErrorCode::BadConfig, "polytropic law needs k > 0, gamma > 1");
  SystemDef s;
  s.n = 2;
  s.eigen = [law](const State& u) { return acoustic_eigen(law, u); };
  s.fields = {FieldType::GenuinelyNonlinear, FieldType::GenuinelyNonlinear};
  s.rarefaction = [law](const State& u, int family, double sigma) {
    return acoustic_rarefaction(law, u(0), u(1), family == 2, sigma);
  };
  s.riemann_coordinates = [law](const State& u) {
    const double h = 2.0 * law.sound(u(0)) / (law.gamma - 1.0);
    return make_state({u(1) - h, u(1) + h});
  };
  s.admissible = positive_density;
  s.domain = gas_box_2();
  return s;
}

struct GammaGas {
  double gamma;

  double pressure(double rho, double s) const { return std::exp(s) * std::pow(rho, gamma); }
  Polytropic isentrope(double s) const { return {std::sqrt(gamma * std::exp(s)), gamma}; }
};

EigenData euler_eigen(const GammaGas& gas, const State& u) {
  const double rho = u(0), v = u(1), s = u(2);
  const double p = gas.pressure(rho, s);
  const double c = std::sqrt(gas.gamma * p / rho);
  const double scale = c * (gas.gamma + 1.0) / 2.0;
  const double contact_norm = std::sqrt(1.0 + gas.gamma * gas.gamma / (rho * rho));
  EigenData ed;
  ed.lambdas = make_state({v - c, v, v + c});
  ed.right.resize(3, 3);
  ed.right << -rho / scale, 1.0 / contact_norm, rho / scale,
              c / scale, 0.0, c / scale,
              0.0, -gas.gamma / rho / contact_norm, 0.0;
  ed.left = ed.right.inverse();
  return ed;
}

SystemDef euler_common(double gamma) {
  if (!(gamma > 1.0 && gamma <= 3.0)) throw Error(ErrorCode::BadConfig, "gamma must lie in (1, 3]");
  const GammaGas gas{gamma};
  SystemDef s;
  s.n = 3;
  s.eigen = [gas](const State& u) { return euler_eigen(gas, u); };
  s.fields = {FieldType::GenuinelyNonlinear, FieldType::LinearlyDegenerate, FieldType::GenuinelyNonlinear};
  s.rarefaction = [gas](const State& u, int family, double sigma) {
    const State rv = acoustic_rarefaction(gas.isentrope(u(2)), u(0), u(1), family == 3, sigma);
    return make_state({rv(0), rv(1), u(2)});
  };
  s.admissible = positive_density;
  s.domain = gas_box_3();
  return s;
}

} // namespace

double Polytropic::p(double rho) const { return k * k / gamma * std::pow(rho, gamma); }
double Polytropic::dp(double rho) const { return k * k * std::pow(rho, gamma - 1.0); }
double Polytropic::sound(double rho) const { return k * std::pow(rho, 0.5 * (gamma - 1.0)); }
double Polytropic::big_p(double rho) const { return k * k * std::pow(rho, gamma - 1.0) / (gamma - 1.0); }
double Polytropic::rho_of_sound(double c) const { return std::pow(c / k, 2.0 / (gamma - 1.0)); }

SystemDef psystem_speed(Polytropic law) {
  SystemDef s = polytropic_common(law);
  s.name = "psystem_speed";
  s.g = [](const State& u) { return u; };
  s.f = [law](const State& u) { return make_state({u(0) * u(1), 0.5 * u(1) * u(1) + law.big_p(u(0))}); };
  s.dg = [](const State&) { return Matrix::Identity(2, 2); };
  s.df = [law](const State& u) {
    Matrix m(2, 2);
    m << u(1), u(0), law.dp(u(0)) / u(0), u(1);
    return m;
  };
  s.g_inverse = [](const State& w) { return w; };
  s.hugoniot = [law](const State& u, int family, double tau) {
    const double rho = u(0), v = u(1);
    const double rho_s = locus_density(law, rho, family, tau);
    const double arg = 2.0 * (rho_s - rho) * (law.big_p(rho_s) - law.big_p(rho)) / (rho + rho_s);
    return make_state({rho_s, v + sgn(tau) * std::sqrt(std::max(arg, 0.0))});
  };
  s.lambda_hat = estimate_lambda_hat(s);
  return s;
}

SystemDef psystem_momentum(Polytropic law) {
  SystemDef s = polytropic_common(law);
  s.name = "psystem_momentum";
  s.g = [](const State& u) { return make_state({u(0), u(0) * u(1)}); };
  s.f = [law](const State& u) { return make_state({u(0) * u(1), u(0) * u(1) * u(1) + law.p(u(0))}); };
  s.dg = [](const State& u) {
    Matrix m(2, 2);
    m << 1.0, 0.0, u(1), u(0);
    return m;
  };
  s.df = [law](const State& u) {
    Matrix m(2, 2);
    m << u(1), u(0), u(1) * u(1) + law.dp(u(0)), 2.0 * u(0) * u(1);
    return m;
  };
  s.g_inverse = [](const State& w) { return make_state({w(0), w(1) / w(0)}); };
  s.hugoniot = [law](const State& u, int family, double tau) {
    const double rho = u(0), v = u(1);
    const double rho_s = locus_density(law, rho, family, tau);
    return make_state({rho_s, momentum_locus_velocity(rho, law.p(rho), v, rho_s, law.p(rho_s), tau)});
  };
  s.lambda_hat = estimate_lambda_hat(s);
  return s;
}

SystemPair psystem_pair(Polytropic law) {
  return {psystem_speed(law), psystem_momentum(law),
          "psystem(k=" + std::to_string(law.k) + ",gamma=" + std::to_string(law.gamma) + ")"};
}

SystemDef euler_entropy(double gamma) {
  SystemDef s = euler_common(gamma);
  const GammaGas gas{gamma};
  s.name = "euler_entropy";
  s.g = [](const State& u) { return make_state({u(0), u(0) * u(1), u(0) * u(2)}); };
  s.f = [gas](const State& u) {
    const double rho = u(0), v = u(1), en = u(2);
    return make_state({rho * v, rho * v * v + gas.pressure(rho, en), rho * v * en});
  };
  s.dg = [](const State& u) {
    Matrix m(3, 3);
    m << 1.0, 0.0, 0.0, u(1), u(0), 0.0, u(2), 0.0, u(0);
    return m;
  };
  s.df = [gas](const State& u) {
    const double rho = u(0), v = u(1), en = u(2);
    const double p = gas.pressure(rho, en);
    Matrix m(3, 3);
    m << v, rho, 0.0,
         v * v + gas.gamma * p / rho, 2.0 * rho * v, p,
         v * en, rho * en, rho * v;
    return m;
  };
  s.g_inverse = [](const State& w) { return make_state({w(0), w(1) / w(0), w(2) / w(0)}); };
  s.hugoniot = [gas](const State& u, int family, double tau) {
    const double rho = u(0), v = u(1), en = u(2);
    const Polytropic law = gas.isentrope(en);
    const double rho_s = locus_density(law, rho, family == 3 ? 2 : 1, tau);
    return make_state({rho_s, momentum_locus_velocity(rho, law.p(rho), v, rho_s, law.p(rho_s), tau), en});
  };
  s.lambda_hat = estimate_lambda_hat(s);
  return s;
}

SystemDef euler_energy(double gamma) {
  SystemDef s = euler_common(gamma);
  const GammaGas gas{gamma};
  const double gm1 = gamma - 1.0;
  s.name = "euler_energy";
  s.g = [gas, gm1](const State& u) {
    const double rho = u(0), v = u(1);
    return make_state({rho, rho * v, 0.5 * rho * v * v + gas.pressure(rho, u(2)) / gm1});
  };
  s.f = [gas, gm1](const State& u) {
    const double rho = u(0), v = u(1), p = gas.pressure(rho, u(2));
    return make_state({rho * v, rho * v * v + p, (0.5 * rho * v * v + gas.gamma * p / gm1) * v});
  };
  s.dg = [gas, gm1](const State& u) {
    const double rho = u(0), v = u(1), p = gas.pressure(rho, u(2));
    const double p_rho = gas.gamma * p / rho;
    Matrix m(3, 3);
    m << 1.0, 0.0, 0.0,
         v, rho, 0.0,
         0.5 * v * v + p_rho / gm1, rho * v, p / gm1;
    return m;
  };
  s.df = [gas, gm1](const State& u) {
    const double rho = u(0), v = u(1), p = gas.pressure(rho, u(2));
    const double p_rho = gas.gamma * p / rho;
    const double gam = gas.gamma;
    Matrix m(3, 3);
    m << v, rho, 0.0,
         v * v + p_rho, 2.0 * rho * v, p,
         (0.5 * v * v + gam * p_rho / gm1) * v, 1.5 * rho * v * v + gam * p / gm1, gam * p * v / gm1;
    return m;
  };
  s.g_inverse = [gas, gm1](const State& w) {
    const double rho = w(0), v = w(1) / w(0);
    const double p = gm1 * (w(2) - 0.5 * rho * v * v);
    if (!(p > 0.0)) throw Error(ErrorCode::NonInvertible, "negative pressure in energy inversion");
    return make_state({rho, v, std::log(p / std::pow(rho, gas.gamma))});
  };
  s.hugoniot = [gas](const State& u, int family, double tau) {
    const double rho = u(0), v = u(1);
    const double gam = gas.gamma;
    const double p = gas.pressure(rho, u(2));
    const double rho_s = locus_density(gas.isentrope(u(2)), rho, family == 3 ? 2 : 1, tau);
    const double denom = (gam + 1.0) * rho - (gam - 1.0) * rho_s;
    if (!(denom > 0.0)) throw Error(ErrorCode::DomainExit, "Hugoniot density ratio beyond the strong-shock limit");
    const double p_s = p * ((gam + 1.0) * rho_s - (gam - 1.0) * rho) / denom;
    return make_state({rho_s, momentum_locus_velocity(rho, p, v, rho_s, p_s, tau), std::log(p_s / std::pow(rho_s, gam))});
  };
  s.lambda_hat = estimate_lambda_hat(s);
  return s;
}

SystemPair euler_pair(double gamma) {
  return {euler_entropy(gamma), euler_energy(gamma), "euler(gamma=" + std::to_string(gamma) + ")"};
}

SystemDef isentropic(double gamma, double s_bar) {
  SystemDef s = psystem_momentum(GammaGas{gamma}.isentrope(s_bar));
  s.name = "isentropic";
  return s;
}

State IsentropicEmbedding::lift(const State& rho_v) const { return make_state({rho_v(0), rho_v(1), s_bar}); }

PiecewiseConstantFn IsentropicEmbedding::lift(const PiecewiseConstantFn& rho_v) const {
  std::vector<State> vals;
  for (const auto& v : rho_v.values()) vals.push_back(lift(v));
  return {rho_v.breakpoints(), std::move(vals)};
}

PiecewiseConstantFn IsentropicEmbedding::project(const PiecewiseConstantFn& rho_v_s) const {
  std::vector<State> vals;
  for (const auto& v : rho_v_s.values()) vals.push_back(v.head(2));
  return {rho_v_s.breakpoints(), std::move(vals)};
}

IsentropicEmbedding isentropic_embed(double gamma, double s_bar) {
  IsentropicEmbedding e{isentropic(gamma, s_bar), euler_entropy(gamma), euler_energy(gamma), s_bar};
  const double half = 0.5 * (e.entropy_form.domain.upper()(2) - e.entropy_form.domain.lower()(2));
  if (std::abs(s_bar - e.entropy_form.domain.center()(2)) >= half)
    throw Error(ErrorCode::BadConfig, "s_bar outside the Euler domain box");
  return e;
}

} // namespace wft::systems
