#include "wft/metrics.hpp"

#include "wft/error.hpp"
#include "wft/fit.hpp"

#include <algorithm>
#include <cmath>

namespace wft {

namespace {

bool inside(std::optional<Interval> window, double x) { return !window || (x >= window->lo && x <= window->hi); }

void integrate_g(const SystemDef& sys, const PiecewiseConstantFn& u, Interval window, State& acc) {
  std::vector<double> cuts{window.lo};
  for (double x : u.breakpoints())
    if (x > window.lo && x < window.hi) cuts.push_back(x);
  cuts.push_back(window.hi);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
    acc += (cuts[k + 1] - cuts[k]) * sys.g(u.eval(0.5 * (cuts[k] + cuts[k + 1])));
}

std::vector<State> tensor_grid(const DomainBox& box, int grid) {
  const int n = box.dim();
  std::vector<State> out;
  std::vector<int> idx(n, 0);
  for (;;) {
    State t(n);
    for (int k = 0; k < n; ++k) t(k) = static_cast<double>(idx[k]) / (grid - 1);
    out.push_back(box.point(t));
    int k = 0;
    while (k < n && ++idx[k] == grid) idx[k++] = 0;
    if (k == n) break;
  }
  return out;
}

} // namespace

double SignedAtomMeasure::positive(std::optional<Interval> window) const {
  double s = 0.0;
  for (const auto& [x, m] : atoms)
    if (m > 0.0 && inside(window, x)) s += m;
  return s;
}

double SignedAtomMeasure::negative(std::optional<Interval> window) const {
  double s = 0.0;
  for (const auto& [x, m] : atoms)
    if (m < 0.0 && inside(window, x)) s -= m;
  return s;
}

SignedAtomMeasure wave_measure(const SystemDef& sys, const PiecewiseConstantFn& u, int family) {
  SignedAtomMeasure mu;
  mu.family = family;
  const auto& xs = u.breakpoints();
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const RiemannFan fan = solve_riemann(sys, u.values()[j], u.values()[j + 1]);
    mu.atoms.emplace_back(xs[j], fan.sizes(family - 1));
  }
  return mu;
}

double negative_variation(const SystemDef& sys, const PiecewiseConstantFn& u, std::optional<Interval> window) {
  double s = 0.0;
  const auto& xs = u.breakpoints();
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (!inside(window, xs[j])) continue;
    const RiemannFan fan = solve_riemann(sys, u.values()[j], u.values()[j + 1]);
    for (Eigen::Index k = 0; k < fan.sizes.size(); ++k) s += std::max(0.0, -fan.sizes(k));
  }
  return s;
}

double l1_distance(const PiecewiseConstantFn& u1, const PiecewiseConstantFn& u2, Interval window) {
  std::vector<double> cuts{window.lo, window.hi};
  for (const auto* u : {&u1, &u2})
    for (double x : u->breakpoints())
      if (x > window.lo && x < window.hi) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double len = cuts[k + 1] - cuts[k];
    if (len <= 0.0) continue;
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    total += len * l1(u1.eval(mid) - u2.eval(mid));
  }
  return total;
}

double cone_l1_distance(const FrontTrackingRun& r1, const FrontTrackingRun& r2, double t, const ConeDomain& cone) {
  const Interval it = cone.at(t);
  return l1_distance(r1.sample_at(t), r2.sample_at(t), it);
}

double diameter(const std::vector<State>& states) {
  if (states.empty()) return 0.0;
  const int n = static_cast<int>(states.front().size());
  double best = 0.0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    double hi = -std::numeric_limits<double>::infinity(), lo = std::numeric_limits<double>::infinity();
    for (const auto& u : states) {
      double v = 0.0;
      for (int k = 0; k < n; ++k) v += (mask >> k & 1) ? -u(k) : u(k);
      hi = std::max(hi, v);
      lo = std::min(lo, v);
    }
    best = std::max(best, hi - lo);
  }
  return best;
}

namespace {

void collect_values(const PiecewiseConstantFn& u, std::optional<Interval> window, std::vector<State>& out) {
  if (!window) {
    out.insert(out.end(), u.values().begin(), u.values().end());
    return;
  }
  out.push_back(u.eval(window->lo));
  const auto& xs = u.breakpoints();
  for (std::size_t j = 0; j < xs.size(); ++j)
    if (xs[j] > window->lo && xs[j] <= window->hi) out.push_back(u.values()[j + 1]);
}

} // namespace

double diam(const PiecewiseConstantFn& u, std::optional<Interval> window) {
  std::vector<State> values;
  collect_values(u, window, values);
  return diameter(values);
}

double diam(const FrontTrackingRun& run, double t, const ConeDomain& cone) {
  cone.at(t);
  std::vector<State> values;
  run.for_each_snapshot(t, [&](double s, const PiecewiseConstantFn& snap) { collect_values(snap, cone.at(s), values); });
  return diameter(values);
}

nlohmann::json DeltaReport::to_json() const {
  return {{"delta", value}, {"argmax", state_to_json(argmax)}, {"family", family}, {"grid", grid},
          {"normalization", normalization}};
}

DeltaReport delta_functional(const SystemPair& pair, int grid) {
  if (grid < 2) throw Error(ErrorCode::BadConfig, "delta grid needs at least 2 points per dimension");
  const SystemDef& sys = pair.left;
  const double h = 1e-4;
  auto curvature = [h](const SystemDef& s, const State& u, const State& r) {
    const State d2 = (jacobian_g(s, u + h * r) - jacobian_g(s, u - h * r)) * r / (2.0 * h);
    return State(jacobian_g(s, u).partialPivLu().solve(d2));
  };

  DeltaReport rep;
  rep.grid = grid;
  rep.normalization = "genuinely nonlinear: Dlambda.r = 1; linearly degenerate: |r|_2 = 1";
  rep.argmax = sys.domain.center();
  for (const State& u : tensor_grid(sys.domain, grid)) {
    const EigenData ed = eigen(sys, u);
    for (int i = 1; i <= sys.n; ++i) {
      if (!sys.genuinely_nonlinear(i)) continue;
      const State r = ed.right.col(i - 1);
      const double dl_r = lambda_gradient(sys, u, i).dot(r);
      const double v = std::abs(dl_r) * l1(curvature(pair.right, u, r) - curvature(pair.left, u, r));
      if (v > rep.value || rep.family == 0) {
        rep.value = v;
        rep.argmax = u;
        rep.family = i;
      }
    }
  }
  return rep;
}

nlohmann::json KappaEstimate::to_json() const {
  nlohmann::json j = {{"sigmas", sigmas},
                      {"state_differences", state_differences},
                      {"speed_differences", speed_differences},
                      {"state_ratio_max", state_ratio_max},
                      {"speed_ratio_max", speed_ratio_max}};
  j["state_slope"] = state_slope ? nlohmann::json(*state_slope) : nlohmann::json(nullptr);
  j["speed_slope"] = speed_slope ? nlohmann::json(*speed_slope) : nlohmann::json(nullptr);
  return j;
}

KappaEstimate kappa_estimate(const SystemPair& pair, const State& u, int family, const std::vector<double>& sigmas) {
  if (family < 1 || family > pair.left.n) throw Error(ErrorCode::BadConfig, "family index out of range");
  if (!pair.left.genuinely_nonlinear(family))
    throw Error(ErrorCode::BadConfig, "kappa is defined for genuinely nonlinear families");
  KappaEstimate k;
  std::vector<double> abs_sigma;
  for (double s : sigmas) {
    if (!(s < 0.0)) throw Error(ErrorCode::BadConfig, "kappa sizes must be negative");
    const State a = lax_curve(pair.left, family, u, s);
    const State b = lax_curve(pair.right, family, u, s);
    const double ds = l1(a - b);
    const double dv = std::abs(shock_speed(pair.left, u, a).speed - shock_speed(pair.right, u, b).speed);
    k.sigmas.push_back(s);
    k.state_differences.push_back(ds);
    k.speed_differences.push_back(dv);
    k.state_ratio_max = std::max(k.state_ratio_max, ds / std::pow(std::abs(s), 3));
    k.speed_ratio_max = std::max(k.speed_ratio_max, dv / (s * s));
    abs_sigma.push_back(std::abs(s));
  }
  auto slope = [&](const std::vector<double>& y) -> std::optional<double> {
    if (y.size() < 2 || std::any_of(y.begin(), y.end(), [](double v) { return !(v > 0.0); })) return std::nullopt;
    return fit_loglog(abs_sigma, y).slope;
  };
  k.state_slope = slope(k.state_differences);
  k.speed_slope = slope(k.speed_differences);
  return k;
}

double interaction_potential(const FrontTrackingRun& run) { return run.upsilon(); }

double conservation_defect(const FrontTrackingRun& run, double t, const ConeDomain& cone) {
  const SystemDef& sys = run.system();
  const double lh = cone.lambda_hat();
  State acc = State::Zero(sys.n);
  integrate_g(sys, run.sample_at(t), cone.at(t), acc);
  State initial = State::Zero(sys.n);
  integrate_g(sys, run.sample_at(0.0), cone.at(0.0), initial);
  acc -= initial;

  // Boundary states change only where a front crosses x = a + λ̂s or x = b − λ̂s.
  std::vector<double> cuts{0.0, t};
  for (const Front& f : run.history()) {
    const double t_end = std::min(f.t_end, t);
    for (const double side : {1.0, -1.0}) {
      const double x_edge = side > 0.0 ? cone.a() : cone.b();
      const double rel = f.speed - side * lh;
      if (rel == 0.0) continue;
      const double s = (x_edge - f.x0 + f.speed * f.t0) / rel;
      if (s > f.t0 && s < t_end && s > 0.0) cuts.push_back(s);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double len = cuts[k + 1] - cuts[k];
    if (len <= 0.0) continue;
    const double s = 0.5 * (cuts[k] + cuts[k + 1]);
    const Interval is = cone.at(s);
    const PiecewiseConstantFn snap = run.sample_at(s);
    const State ua = snap.eval(is.lo), ub = snap.eval(is.hi);
    acc += len * (sys.f(ub) - sys.f(ua) + lh * (sys.g(ua) + sys.g(ub)));
  }
  return l1(acc);
}

double scalar_sharp_constant(const SystemPair& pair, int samples) {
  const SystemDef& a = pair.left;
  const SystemDef& b = pair.right;
  if (a.n != 1 || b.n != 1) throw Error(ErrorCode::BadConfig, "sharp constant applies to scalar pairs");
  const double h = 1e-4;
  auto second = [h](const SystemDef& s, bool flux, double u) {
    auto d = [&](double v) {
      const State w = make_state({v});
      return flux ? jacobian_f(s, w)(0, 0) : jacobian_g(s, w)(0, 0);
    };
    return (d(u + h) - d(u - h)) / (2.0 * h);
  };
  double inf_g = std::numeric_limits<double>::infinity(), inf_gt = inf_g, sup = 0.0;
  const double lo = a.domain.lower()(0), hi = a.domain.upper()(0);
  for (int k = 0; k < samples; ++k) {
    const State u = make_state({lo + (hi - lo) * k / (samples - 1)});
    inf_g = std::min(inf_g, std::abs(jacobian_g(a, u)(0, 0)));
    inf_gt = std::min(inf_gt, std::abs(jacobian_g(b, u)(0, 0)));
    const double f2 = second(a, true, u(0)), g2 = second(a, false, u(0));
    const double ft2 = second(b, true, u(0)), gt2 = second(b, false, u(0));
    sup = std::max(sup, std::abs(f2 * gt2 - ft2 * g2));
  }
  return 2.0 / (inf_g * inf_gt) * sup;
}

} // namespace wft
