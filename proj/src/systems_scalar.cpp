#include "wft/error.hpp"
#include "wft/systems.hpp"

#include <cmath>

namespace wft::systems {

SystemDef burgers(double m) {
  if (!(m > 0.0)) throw Error(ErrorCode::BadConfig, "burgers exponent m must be positive");
  SystemDef s;
  s.name = "burgers(m=" + std::to_string(m) + ")";
  s.n = 1;
  s.g = [m](const State& u) { return make_state({std::pow(u(0), m) / m}); };
  s.f = [m](const State& u) { return make_state({std::pow(u(0), m + 1.0) / (m + 1.0)}); };
  s.dg = [m](const State& u) { return Matrix::Constant(1, 1, std::pow(u(0), m - 1.0)); };
  s.df = [m](const State& u) { return Matrix::Constant(1, 1, std::pow(u(0), m)); };
  s.g_inverse = [m](const State& w) { return make_state({std::pow(m * w(0), 1.0 / m)}); };
  s.eigen = [](const State& u) {
    return EigenData{u, Matrix::Ones(1, 1), Matrix::Ones(1, 1)};
  };
  s.fields = {FieldType::GenuinelyNonlinear};
  s.rarefaction = [](const State& u, int, double sigma) { return make_state({u(0) + sigma}); };
  s.hugoniot = [](const State& u, int, double tau) { return make_state({u(0) + tau}); };
  s.riemann_coordinates = [](const State& u) { return u; };
  s.admissible = [](const State& u) { return u(0) > 0.0 && std::isfinite(u(0)); };
  s.domain = DomainBox(make_state({0.9}), make_state({1.1}), make_state({1.0}));
  s.lambda_hat = estimate_lambda_hat(s);
  return s;
}

SystemPair burgers_pair(double m, double m_tilde) {
  return {burgers(m), burgers(m_tilde), "burgers(" + std::to_string(m) + "," + std::to_string(m_tilde) + ")"};
}

} // namespace wft::systems
