#include "wft/error.hpp"
#include "wft/systems.hpp"

#include <cmath>

namespace wft::systems {

// ψ(ρ) = 1 − ρ; u = (ρ, w).
SystemDef traffic(double q_power) {
  if (!(q_power > 0.0)) throw Error(ErrorCode::BadConfig, "traffic q exponent must be positive");
  const double a = q_power;
  auto q = [a](double w) { return std::pow(w, a); };
  auto dq = [a](double w) { return a * std::pow(w, a - 1.0); };

  SystemDef s;
  s.name = "traffic(q=w^" + std::to_string(a) + ")";
  s.n = 2;
  s.g = [q](const State& u) { return make_state({u(0), u(0) * q(u(1))}); };
  s.f = [q](const State& u) {
    const double flow = u(0) * u(1) * (1.0 - u(0));
    return make_state({flow, flow * q(u(1))});
  };
  s.dg = [q, dq](const State& u) {
    Matrix m(2, 2);
    m << 1.0, 0.0, q(u(1)), u(0) * dq(u(1));
    return m;
  };
  s.df = [q, dq](const State& u) {
    const double rho = u(0), w = u(1);
    const double d_rho = w * (1.0 - 2.0 * rho), d_w = rho * (1.0 - rho);
    Matrix m(2, 2);
    m << d_rho, d_w, d_rho * q(w), d_w * q(w) + rho * w * (1.0 - rho) * dq(w);
    return m;
  };
  s.g_inverse = [a](const State& c) {
    if (!(c(0) > 0.0) || !(c(1) > 0.0)) throw Error(ErrorCode::NonInvertible, "traffic inversion needs positive data");
    return make_state({c(0), std::pow(c(1) / c(0), 1.0 / a)});
  };
  s.eigen = [](const State& u) {
    const double rho = u(0), w = u(1);
    const double norm = std::hypot(1.0 - rho, w);
    EigenData ed;
    ed.lambdas = make_state({(1.0 - 2.0 * rho) * w, (1.0 - rho) * w});
    ed.right.resize(2, 2);
    ed.right << -1.0 / (2.0 * w), (1.0 - rho) / norm, 0.0, w / norm;
    ed.left = ed.right.inverse();
    return ed;
  };
  s.fields = {FieldType::GenuinelyNonlinear, FieldType::LinearlyDegenerate};
  // Family 1 keeps w fixed, so its rarefaction and shock curves coincide.
  auto first_family = [](const State& u, int, double sigma) {
    return make_state({u(0) - sigma / (2.0 * u(1)), u(1)});
  };
  s.rarefaction = first_family;
  s.hugoniot = first_family;
  s.riemann_coordinates = [](const State& u) { return make_state({u(1) * (1.0 - u(0)), u(1)}); };
  s.admissible = [](const State& u) { return u(0) > 0.0 && u(0) < 1.0 && u(1) > 0.0 && u.allFinite(); };
  s.domain = DomainBox(make_state({0.3, 0.8}), make_state({0.7, 1.2}), make_state({0.5, 1.0}));
  s.lambda_hat = estimate_lambda_hat(s);
  return s;
}

SystemPair traffic_pair(double q_power, double q_tilde_power) {
  return {traffic(q_power), traffic(q_tilde_power),
          "traffic(" + std::to_string(q_power) + "," + std::to_string(q_tilde_power) + ")"};
}

} // namespace wft::systems
