#include "wft/riemann.hpp"

#include "wft/error.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>

namespace wft {

std::string to_string(WaveKind kind) {
  switch (kind) {
    case WaveKind::Shock: return "shock";
    case WaveKind::Rarefaction: return "rarefaction";
    case WaveKind::Contact: return "contact";
    case WaveKind::NonPhysical: return "non_physical";
  }
  return "unknown";
}

nlohmann::json RiemannFan::to_json() const {
  nlohmann::json waves_json = nlohmann::json::array();
  for (const auto& w : waves) {
    waves_json.push_back({{"family", w.family},
                          {"kind", to_string(w.kind)},
                          {"size", w.size},
                          {"speed_lo", w.speed_lo},
                          {"speed_hi", w.speed_hi},
                          {"left", state_to_json(w.left)},
                          {"right", state_to_json(w.right)}});
  }
  return {{"left", state_to_json(left)}, {"right", state_to_json(right)}, {"sizes", state_to_json(sizes)},
          {"waves", waves_json}};
}

namespace {

State checked(const SystemDef& sys, State u, const char* what) {
  if (!u.allFinite() || (sys.admissible && !sys.admissible(u)))
    throw Error(ErrorCode::DomainExit, std::string(what) + " left the admissible region");
  return u;
}

State right_vector(const SystemDef& sys, const State& u, int family) {
  return eigen(sys, u).right.col(family - 1);
}

// Residual of the scaled RH system in the unknowns x = (d, Λ), S = u + σd.
Eigen::VectorXd rh_residual(const SystemDef& sys, int family, const State& u, double sigma, const Eigen::VectorXd& x,
                  double lambda_u, const State& gu, const State& fu) {
  const int n = sys.n;
  const State s = u + sigma * x.head(n);
  const double big_lambda = x(n);
  Eigen::VectorXd r(n + 1);
  r.head(n) = (big_lambda * (sys.g(s) - gu) - (sys.f(s) - fu)) / sigma;
  r(n) = (characteristic_speed(sys, s, family) - lambda_u) / sigma - 1.0;
  return r;
}

bool rh_newton(const SystemDef& sys, int family, const State& u, double sigma, Eigen::VectorXd& x) {
  const int n = sys.n;
  const double lambda_u = characteristic_speed(sys, u, family);
  const State gu = sys.g(u), fu = sys.f(u);
  const double h = 1e-7;
  for (int it = 0; it < 40; ++it) {
    Eigen::VectorXd r;
    try {
      r = rh_residual(sys, family, u, sigma, x, lambda_u, gu, fu);
    } catch (const Error&) {
      return false;
    }
    if (!r.allFinite()) return false;
    if (r.lpNorm<Eigen::Infinity>() <= 1e-14) return true;
    Eigen::MatrixXd jac(n + 1, n + 1);
    try {
      for (int k = 0; k <= n; ++k) {
        Eigen::VectorXd xp = x, xm = x;
        xp(k) += h;
        xm(k) -= h;
        jac.col(k) = (rh_residual(sys, family, u, sigma, xp, lambda_u, gu, fu) -
                      rh_residual(sys, family, u, sigma, xm, lambda_u, gu, fu)) / (2.0 * h);
      }
    } catch (const Error&) {
      return false;
    }
    const Eigen::VectorXd step = jac.fullPivLu().solve(-r);
    if (!step.allFinite()) return false;
    x += step;
    if (step.lpNorm<Eigen::Infinity>() <= 1e-15 * (1.0 + x.lpNorm<Eigen::Infinity>())) {
      const Eigen::VectorXd rf = rh_residual(sys, family, u, sigma, x, lambda_u, gu, fu);
      return rf.allFinite() && rf.lpNorm<Eigen::Infinity>() <= 1e-10;
    }
  }
  const Eigen::VectorXd rf = rh_residual(sys, family, u, sigma, x, lambda_u, gu, fu);
  return rf.allFinite() && rf.lpNorm<Eigen::Infinity>() <= 1e-10;
}

Eigen::VectorXd rh_predictor(const SystemDef& sys, int family, const State& u, double sigma) {
  const int n = sys.n;
  Eigen::VectorXd x(n + 1);
  x.head(n) = (rarefaction_curve(sys, family, u, sigma) - u) / sigma;
  x(n) = characteristic_speed(sys, u, family) + 0.5 * sigma;
  return x;
}

} // namespace

State integral_curve(const SystemDef& sys, int family, const State& u, double sigma, int steps) {
  if (sigma == 0.0) return u;
  const double h = sigma / steps;
  State y = u;
  for (int k = 0; k < steps; ++k) {
    const State k1 = right_vector(sys, y, family);
    const State k2 = right_vector(sys, y + 0.5 * h * k1, family);
    const State k3 = right_vector(sys, y + 0.5 * h * k2, family);
    const State k4 = right_vector(sys, y + h * k3, family);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return checked(sys, y, "integral curve");
}

State rarefaction_curve(const SystemDef& sys, int family, const State& u, double sigma) {
  if (sigma == 0.0) return u;
  if (sys.rarefaction && sys.genuinely_nonlinear(family))
    return checked(sys, sys.rarefaction(u, family, sigma), "rarefaction curve");
  return integral_curve(sys, family, u, sigma);
}

State shock_curve_generic(const SystemDef& sys, int family, const State& u, double sigma) {
  if (sigma == 0.0) return u;
  Eigen::VectorXd x = rh_predictor(sys, family, u, sigma);
  if (rh_newton(sys, family, u, sigma, x)) return checked(sys, u + sigma * x.head(sys.n), "shock curve");

  const double step = 1e-3;
  const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(sigma) / step - 1e-9)));
  double s_prev = sigma / pieces;
  x = rh_predictor(sys, family, u, s_prev);
  if (!rh_newton(sys, family, u, s_prev, x))
    throw Error(ErrorCode::CurveNewtonFailure, "RH continuation failed at its first step");
  for (int k = 2; k <= pieces; ++k) {
    const double s = sigma * k / pieces;
    x(sys.n) += 0.5 * (s - s_prev);
    if (!rh_newton(sys, family, u, s, x))
      throw Error(ErrorCode::CurveNewtonFailure, "RH continuation stalled at sigma = " + std::to_string(s));
    s_prev = s;
  }
  return checked(sys, u + sigma * x.head(sys.n), "shock curve");
}

State shock_curve(const SystemDef& sys, int family, const State& u, double sigma) {
  if (sigma == 0.0) return u;
  if (!sys.hugoniot) return shock_curve_generic(sys, family, u, sigma);

  const double lambda_u = characteristic_speed(sys, u, family);
  auto excess = [&](double tau) {
    return characteristic_speed(sys, checked(sys, sys.hugoniot(u, family, tau), "Hugoniot locus"), family) -
           lambda_u - sigma;
  };
  double lo = 2.0 * sigma, hi = 0.5 * sigma;
  double f_lo = excess(lo), f_hi = excess(hi);
  for (int k = 0; k < 20 && f_lo > 0.0; ++k) {
    lo *= 2.0;
    f_lo = excess(lo);
  }
  for (int k = 0; k < 20 && f_hi < 0.0; ++k) {
    hi *= 0.5;
    f_hi = excess(hi);
  }
  if (f_lo == 0.0) return sys.hugoniot(u, family, lo);
  if (f_hi == 0.0) return sys.hugoniot(u, family, hi);
  if (f_lo > 0.0 || f_hi < 0.0) throw Error(ErrorCode::CurveNewtonFailure, "could not bracket the Hugoniot parameter");

  std::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(excess, lo, hi, f_lo, f_hi,
                                                      boost::math::tools::eps_tolerance<double>(52), iters);
  return checked(sys, sys.hugoniot(u, family, 0.5 * (root.first + root.second)), "Hugoniot locus");
}

State lax_curve(const SystemDef& sys, int family, const State& u, double sigma) {
  if (family < 1 || family > sys.n) throw Error(ErrorCode::BadConfig, "family index out of range");
  if (sigma == 0.0) return u;
  if (!sys.genuinely_nonlinear(family)) return integral_curve(sys, family, u, sigma);
  return sigma > 0.0 ? rarefaction_curve(sys, family, u, sigma) : shock_curve(sys, family, u, sigma);
}

State compose_lax_curves(const SystemDef& sys, const State& u, const State& sizes) {
  State cur = u;
  for (int k = 0; k < sys.n; ++k)
    if (sizes(k) != 0.0) cur = lax_curve(sys, k + 1, cur, sizes(k));
  return cur;
}

ShockSpeed shock_speed(const SystemDef& sys, const State& u, const State& s2) {
  const State dg = sys.g(s2) - sys.g(u);
  const State df = sys.f(s2) - sys.f(u);
  if (dg.lpNorm<Eigen::Infinity>() < 1e-14) throw Error(ErrorCode::DegenerateJump, "jump in g too small for a shock speed");
  const double speed = sys.n == 1 ? df(0) / dg(0) : dg.dot(df) / dg.dot(dg);
  return {speed, (speed * dg - df).lpNorm<Eigen::Infinity>()};
}

Wave make_wave(const SystemDef& sys, int family, double size, const State& left, const State& right) {
  Wave w;
  w.family = family;
  w.size = size;
  w.left = left;
  w.right = right;
  if (!sys.genuinely_nonlinear(family)) {
    w.kind = WaveKind::Contact;
    w.speed_lo = w.speed_hi = characteristic_speed(sys, left, family);
  } else if (size < 0.0) {
    w.kind = WaveKind::Shock;
    w.speed_lo = w.speed_hi = shock_speed(sys, left, right).speed;
  } else {
    w.kind = WaveKind::Rarefaction;
    w.speed_lo = characteristic_speed(sys, left, family);
    w.speed_hi = characteristic_speed(sys, right, family);
  }
  return w;
}

RiemannFan solve_riemann(const SystemDef& sys, const State& u_l, const State& u_r, const RiemannOptions& opts) {
  const int n = sys.n;
  RiemannFan fan;
  fan.left = u_l;
  fan.right = u_r;
  fan.sizes = State::Zero(n);
  if (u_l == u_r) return fan;

  State sigma(n);
  if (n == 1) {
    sigma(0) = characteristic_speed(sys, u_r, 1) - characteristic_speed(sys, u_l, 1);
  } else {
    sigma = eigen(sys, 0.5 * (u_l + u_r)).left * (u_r - u_l);
    auto residual = [&](const State& s) { return State(compose_lax_curves(sys, u_l, s) - u_r); };
    State r = residual(sigma);
    double norm = r.lpNorm<Eigen::Infinity>();
    const double h = opts.fd_step;
    int it = 0;
    for (; it < opts.max_iterations && norm > opts.tolerance; ++it) {
      Matrix jac(n, n);
      for (int k = 0; k < n; ++k) {
        State sp = sigma, sm = sigma;
        sp(k) += h;
        sm(k) -= h;
        jac.col(k) = (residual(sp) - residual(sm)) / (2.0 * h);
      }
      const State step = jac.fullPivLu().solve(-r);
      if (!step.allFinite()) break;
      double damping = 1.0;
      bool accepted = false;
      for (int k = 0; k < 12 && !accepted; ++k, damping *= 0.5) {
        try {
          const State trial = sigma + damping * step;
          const State rt = residual(trial);
          const double nt = rt.lpNorm<Eigen::Infinity>();
          if (nt < norm || (k == 11 && nt <= norm)) {
            sigma = trial;
            r = rt;
            norm = nt;
            accepted = true;
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::DomainExit && e.code() != ErrorCode::CurveNewtonFailure) throw;
        }
      }
      if (!accepted) break;
    }
    if (norm > 1e-11)
      throw Error(ErrorCode::RiemannNewtonFailure,
                  "Riemann Newton residual " + std::to_string(norm) + " after " + std::to_string(it) + " iterations");
  }

  State cur = u_l;
  for (int k = 0; k < n; ++k) {
    if (std::abs(sigma(k)) <= 1e-14) continue;
    fan.sizes(k) = sigma(k);
    const State next = lax_curve(sys, k + 1, cur, sigma(k));
    fan.waves.push_back(make_wave(sys, k + 1, sigma(k), cur, next));
    cur = next;
  }
  if (!fan.waves.empty()) {
    Wave& last = fan.waves.back();
    last = make_wave(sys, last.family, last.size, last.left, u_r);
  }
  return fan;
}

State fan_eval(const SystemDef& sys, const RiemannFan& fan, double xi) {
  for (const auto& w : fan.waves) {
    if (xi < w.speed_lo) return w.left;
    if (w.kind == WaveKind::Rarefaction && xi < w.speed_hi)
      return rarefaction_curve(sys, w.family, w.left, xi - w.speed_lo);
  }
  return fan.right;
}

double riemann_coordinate_size(const SystemDef& sys, int family, const State& left, const State& right) {
  if (!sys.rich()) throw Error(ErrorCode::NotRich, sys.name + " has no Riemann coordinates");
  return sys.riemann_coordinates(right)(family - 1) - sys.riemann_coordinates(left)(family - 1);
}

State left_state_for(const SystemDef& sys, int family, const State& u_right, double sigma) {
  const int n = sys.n;
  State u = u_right - sigma * right_vector(sys, u_right, family);
  auto residual = [&](const State& v) { return State(lax_curve(sys, family, v, sigma) - u_right); };
  const double h = 1e-7;
  State r = residual(u);
  for (int it = 0; it < 50 && r.lpNorm<Eigen::Infinity>() > 1e-14; ++it) {
    Matrix jac(n, n);
    for (int k = 0; k < n; ++k) {
      State up = u, um = u;
      up(k) += h;
      um(k) -= h;
      jac.col(k) = (residual(up) - residual(um)) / (2.0 * h);
    }
    const State step = jac.fullPivLu().solve(-r);
    if (!step.allFinite()) break;
    u += step;
    r = residual(u);
    if (step.lpNorm<Eigen::Infinity>() <= 1e-16 * (1.0 + u.lpNorm<Eigen::Infinity>())) break;
  }
  if (r.lpNorm<Eigen::Infinity>() > 1e-11)
    throw Error(ErrorCode::CurveNewtonFailure, "could not locate the left state of a wave");
  return u;
}

} // namespace wft
