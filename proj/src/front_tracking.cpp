#include "wft/front_tracking.hpp"

#include "wft/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace wft {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

nlohmann::json RunDiagnostics::to_json() const {
  nlohmann::json tv = nlohmann::json::array(), ups = nlohmann::json::array();
  for (const auto& [t, v] : tv_history) tv.push_back({t, v});
  for (const auto& [t, v] : upsilon_history) ups.push_back({t, v});
  return {{"tv0", tv0},
          {"upsilon_constant", upsilon_constant},
          {"tv_history", tv},
          {"upsilon_history", ups},
          {"max_upsilon_increase", max_upsilon_increase},
          {"np_strength", np_strength},
          {"max_np_strength", max_np_strength},
          {"np_budget_exceeded", np_budget_exceeded},
          {"accurate_events", accurate_events},
          {"simplified_events", simplified_events},
          {"np_crossings", np_crossings},
          {"perturbations", perturbations},
          {"max_alive_fronts", max_alive_fronts}};
}

FrontTrackingRun::FrontTrackingRun(SystemDef sys, FrontTrackingOptions opts) : sys_(std::move(sys)), opts_(opts) {}

FrontTrackingRun FrontTrackingRun::build(const SystemDef& sys, const PiecewiseConstantFn& datum,
                                         FrontTrackingOptions opts) {
  if (!(opts.epsilon > 0.0)) throw Error(ErrorCode::BadConfig, "epsilon must be positive");
  if (!(opts.tv_factor >= 1.0)) throw Error(ErrorCode::BadConfig, "TV stability constant must be at least 1");
  if (datum.dim() != sys.n) throw Error(ErrorCode::BadConfig, "datum dimension does not match the system");

  FrontTrackingRun run(sys, opts);
  run.lambda_hat_ = opts.lambda_hat > 0.0 ? opts.lambda_hat : sys.lambda_hat;
  run.diag_.upsilon_constant =
      opts.upsilon_constant > 0.0 ? opts.upsilon_constant : 10.0 / sys.domain.l1_width();
  run.far_left_ = datum.values().front();
  for (const auto& v : datum.values()) run.check_state(v);

  const auto& xs = datum.breakpoints();
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const RiemannFan fan = solve_riemann(sys, datum.values()[j], datum.values()[j + 1]);
    for (const auto& w : fan.waves) run.add_wave_fronts(w, 0.0, xs[j], run.alive_, true);
  }
  run.initial_order_ = run.alive_;
  run.refresh_collisions(0, run.alive_.size());
  run.tv_ = run.total_variation();
  run.diag_.tv0 = run.tv_;
  run.diag_.tv_history.emplace_back(0.0, run.tv_);
  run.diag_.max_alive_fronts = run.alive_.size();
  if (sys.rich() && opts.track_upsilon) run.diag_.upsilon_history.emplace_back(0.0, run.upsilon());
  return run;
}

void FrontTrackingRun::check_state(const State& u) const {
  if (!sys_.domain.contains(u, opts_.domain_slack)) {
    std::string msg = "state (";
    for (Eigen::Index k = 0; k < u.size(); ++k) msg += (k ? ", " : "") + fmt(u(k));
    throw Error(ErrorCode::DomainExit, msg + ") left the domain box of " + sys_.name);
  }
}

std::size_t FrontTrackingRun::add_front(double t, double x, int family, WaveKind kind, double size,
                                        const State& left, const State& right, double speed) {
  if (history_.size() >= opts_.max_fronts) throw Error(ErrorCode::TooManyFronts, "front budget exhausted");
  Front f;
  f.id = history_.size();
  f.t0 = t;
  f.x0 = x;
  f.speed = speed;
  f.family = family;
  f.kind = kind;
  f.size = size;
  f.left = left;
  f.right = right;
  history_.push_back(f);
  return f.id;
}

void FrontTrackingRun::add_wave_fronts(const Wave& w, double t, double x, std::vector<std::size_t>& out,
                                       bool split) {
  check_state(w.right);
  if (w.kind != WaveKind::Rarefaction) {
    out.push_back(add_front(t, x, w.family, w.kind, w.size, w.left, w.right, w.speed_lo));
    return;
  }
  const double eps = opts_.epsilon;
  const int pieces = split && w.size > eps ? static_cast<int>(std::ceil(w.size / eps - 1e-9)) : 1;
  if (pieces == 1) {
    out.push_back(add_front(t, x, w.family, w.kind, w.size, w.left, w.right, w.speed_hi));
    return;
  }
  const double piece = w.size / pieces;
  State cur = w.left;
  for (int k = 1; k <= pieces; ++k) {
    const State next = k == pieces ? w.right : rarefaction_curve(sys_, w.family, w.left, piece * k);
    check_state(next);
    out.push_back(add_front(t, x, w.family, w.kind, piece, cur, next, characteristic_speed(sys_, next, w.family)));
    cur = next;
  }
}

double FrontTrackingRun::collision_time(std::size_t left_id, std::size_t right_id) const {
  const Front& l = history_[left_id];
  const Front& r = history_[right_id];
  if (l.speed <= r.speed) return kInf;
  const double gap = std::max(0.0, r.position(time_) - l.position(time_));
  return time_ + gap / (l.speed - r.speed);
}

void FrontTrackingRun::refresh_collisions(std::size_t from, std::size_t to) {
  collisions_.resize(alive_.empty() ? 0 : alive_.size() - 1, kInf);
  for (std::size_t i = from; i < to && i + 1 < alive_.size(); ++i)
    collisions_[i] = collision_time(alive_[i], alive_[i + 1]);
}

void FrontTrackingRun::interact(std::size_t k, double t) {
  const Front a = history_[alive_[k]];
  const Front b = history_[alive_[k + 1]];
  const double x = 0.5 * (a.position(t) + b.position(t));
  const double eps = opts_.epsilon;
  const bool track = sys_.rich() && opts_.track_upsilon;
  const double before = track ? upsilon_of(alive_, t) : 0.0;

  std::vector<std::size_t> out;
  auto add_np = [&](const State& from, const State& to) {
    const double strength = l1(to - from);
    if (strength > 0.0)
      out.push_back(add_front(t, x, sys_.n + 1, WaveKind::NonPhysical, strength, from, to, lambda_hat_));
  };

  if (a.kind == WaveKind::NonPhysical && b.kind == WaveKind::NonPhysical)
    throw Error(ErrorCode::RiemannNewtonFailure, "two non-physical fronts met");
  if (b.kind == WaveKind::NonPhysical)
    throw Error(ErrorCode::RiemannNewtonFailure, "a physical front overtook a non-physical front");

  if (a.kind == WaveKind::NonPhysical) {
    const State moved = lax_curve(sys_, b.family, a.left, b.size);
    add_wave_fronts(make_wave(sys_, b.family, b.size, a.left, moved), t, x, out, false);
    add_np(moved, b.right);
    ++diag_.np_crossings;
  } else {
    const bool rarefactions = a.kind == WaveKind::Rarefaction && b.kind == WaveKind::Rarefaction;
    const bool accurate = std::abs(a.size * b.size) >= eps * eps || (rarefactions && a.family != b.family) ||
                          a.family < b.family;
    if (accurate) {
      const RiemannFan fan = solve_riemann(sys_, a.left, b.right);
      for (const auto& w : fan.waves) add_wave_fronts(w, t, x, out, true);
      ++diag_.accurate_events;
    } else if (a.family > b.family) {
      const State mid = lax_curve(sys_, b.family, a.left, b.size);
      check_state(mid);
      const State end = lax_curve(sys_, a.family, mid, a.size);
      add_wave_fronts(make_wave(sys_, b.family, b.size, a.left, mid), t, x, out, false);
      add_wave_fronts(make_wave(sys_, a.family, a.size, mid, end), t, x, out, false);
      add_np(end, b.right);
      ++diag_.simplified_events;
    } else {
      const double merged = a.size + b.size;
      State end = a.left;
      if (std::abs(merged) > 1e-14) {
        end = lax_curve(sys_, a.family, a.left, merged);
        add_wave_fronts(make_wave(sys_, a.family, merged, a.left, end), t, x, out, true);
      }
      add_np(end, b.right);
      ++diag_.simplified_events;
    }
  }

  history_[a.id].t_end = t;
  history_[b.id].t_end = t;
  alive_.erase(alive_.begin() + static_cast<std::ptrdiff_t>(k), alive_.begin() + static_cast<std::ptrdiff_t>(k + 2));
  alive_.insert(alive_.begin() + static_cast<std::ptrdiff_t>(k), out.begin(), out.end());

  const std::vector<double> old = collisions_;
  const std::size_t m = out.size();
  collisions_.assign(alive_.empty() ? 0 : alive_.size() - 1, kInf);
  for (std::size_t i = 0; i < collisions_.size(); ++i) {
    if (i + 2 <= k)
      collisions_[i] = old[i];
    else if (i >= k + m)
      collisions_[i] = old[i + 2 - m];
    else
      collisions_[i] = collision_time(alive_[i], alive_[i + 1]);
  }
  events_.push_back({t, k, out});

  tv_ = total_variation();
  diag_.tv_history.emplace_back(t, tv_);
  diag_.max_alive_fronts = std::max(diag_.max_alive_fronts, alive_.size());
  double np = 0.0;
  for (std::size_t id : alive_)
    if (history_[id].kind == WaveKind::NonPhysical) np += history_[id].size;
  diag_.np_strength = np;
  diag_.max_np_strength = std::max(diag_.max_np_strength, np);
  if (np > eps) diag_.np_budget_exceeded = true;
  if (track) {
    const double after = upsilon_of(alive_, t);
    diag_.max_upsilon_increase = std::max(diag_.max_upsilon_increase, after - before);
    diag_.upsilon_history.emplace_back(t, after);
  }
  if (tv_ > opts_.tv_factor * diag_.tv0 + 1e-12)
    throw Error(ErrorCode::TVBlowup, "total variation " + fmt(tv_) + " exceeds " + fmt(opts_.tv_factor) +
                                         " x initial " + fmt(diag_.tv0) + " at t = " + fmt(t));
}

void FrontTrackingRun::advance_to(double t) {
  if (t < time_) throw Error(ErrorCode::OutOfRetainedRange, "cannot advance a run backwards in time");
  std::size_t perturbed = static_cast<std::size_t>(-1);
  for (;;) {
    std::size_t k = collisions_.size();
    double next = kInf;
    for (std::size_t i = 0; i < collisions_.size(); ++i)
      if (collisions_[i] < next) {
        next = collisions_[i];
        k = i;
      }
    if (k == collisions_.size() || next > t) break;

    const std::size_t middle = alive_[k + 1];
    if (k + 1 < collisions_.size() && middle != perturbed &&
        collisions_[k + 1] <= next + 1e-13 * (1.0 + std::abs(next))) {
      history_[middle].x0 += 1e-12 * opts_.length_scale;
      collisions_[k] = collision_time(alive_[k], middle);
      collisions_[k + 1] = collision_time(middle, alive_[k + 2]);
      perturbed = middle;
      ++diag_.perturbations;
      continue;
    }
    time_ = next;
    interact(k, next);
    if (events_.size() > opts_.max_events) throw Error(ErrorCode::TooManyFronts, "event budget exhausted");
  }
  time_ = t;
  diag_.tv_history.emplace_back(t, tv_);
  if (sys_.rich() && opts_.track_upsilon) diag_.upsilon_history.emplace_back(t, upsilon());
}

std::vector<std::size_t> FrontTrackingRun::order_at(double t) const {
  std::vector<std::size_t> order = initial_order_;
  for (const auto& e : events_) {
    if (e.t > t) break;
    order.erase(order.begin() + static_cast<std::ptrdiff_t>(e.index),
                order.begin() + static_cast<std::ptrdiff_t>(e.index + 2));
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(e.index), e.inserted.begin(), e.inserted.end());
  }
  return order;
}

PiecewiseConstantFn FrontTrackingRun::snapshot(const std::vector<std::size_t>& order, double t) const {
  std::vector<double> xs;
  std::vector<State> vals{far_left_};
  for (std::size_t id : order) {
    const Front& f = history_[id];
    const double x = f.position(t);
    if (!xs.empty() && x <= xs.back()) {
      vals.back() = f.right;
      continue;
    }
    xs.push_back(x);
    vals.push_back(f.right);
  }
  return {std::move(xs), std::move(vals)};
}

PiecewiseConstantFn FrontTrackingRun::sample_at(double t) const {
  if (!(t >= 0.0) || t > time_ + 1e-12 * (1.0 + time_))
    throw Error(ErrorCode::OutOfRetainedRange, "sample time " + fmt(t) + " outside [0, " + fmt(time_) + "]");
  return snapshot(order_at(t), t);
}

void FrontTrackingRun::for_each_snapshot(double t,
                                         const std::function<void(double, const PiecewiseConstantFn&)>& visit) const {
  std::vector<std::size_t> order = initial_order_;
  visit(0.0, snapshot(order, 0.0));
  for (const auto& e : events_) {
    if (e.t > t) break;
    order.erase(order.begin() + static_cast<std::ptrdiff_t>(e.index),
                order.begin() + static_cast<std::ptrdiff_t>(e.index + 2));
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(e.index), e.inserted.begin(), e.inserted.end());
    visit(e.t, snapshot(order, e.t));
  }
}

std::vector<Front> FrontTrackingRun::alive() const {
  std::vector<Front> out;
  out.reserve(alive_.size());
  for (std::size_t id : alive_) out.push_back(history_[id]);
  return out;
}

std::vector<double> FrontTrackingRun::event_times() const {
  std::vector<double> out;
  out.reserve(events_.size());
  for (const auto& e : events_) out.push_back(e.t);
  return out;
}

double FrontTrackingRun::total_variation() const {
  double tv = 0.0;
  for (std::size_t id : alive_) tv += l1(history_[id].right - history_[id].left);
  return tv;
}

double FrontTrackingRun::upsilon() const { return upsilon_of(alive_, time_); }

double FrontTrackingRun::upsilon_of(const std::vector<std::size_t>& order, double t) const {
  if (!sys_.rich()) throw Error(ErrorCode::NotRich, sys_.name + " has no Riemann coordinates");
  std::optional<Interval> window;
  if (opts_.cone) {
    if (t >= opts_.cone->max_time()) return 0.0;
    window = opts_.cone->at(t);
  }
  const int n = sys_.n;
  std::vector<double> total(n + 2, 0.0), rarefaction(n + 2, 0.0), shock(n + 2, 0.0);
  double linear = 0.0, quadratic = 0.0;
  for (std::size_t id : order) {
    const Front& f = history_[id];
    const double x = f.position(t);
    if (window && (x < window->lo || x > window->hi)) continue;
    const int j = f.family;
    const double s = f.kind == WaveKind::NonPhysical ? f.size : riemann_coordinate_size(sys_, j, f.left, f.right);
    const double mass = std::abs(s);
    if (f.kind != WaveKind::NonPhysical && s < 0.0) linear += mass;
    double partners = f.kind == WaveKind::Shock ? total[j] : shock[j];
    for (int i = j + 1; i <= n + 1; ++i)
      partners += f.kind == WaveKind::Rarefaction ? total[i] - rarefaction[i] : total[i];
    quadratic += mass * partners;
    total[j] += mass;
    if (f.kind == WaveKind::Rarefaction) rarefaction[j] += mass;
    if (f.kind == WaveKind::Shock) shock[j] += mass;
  }
  return linear + diag_.upsilon_constant * quadratic;
}

void FrontTrackingRun::write_fronts_csv(std::ostream& out) const {
  out << "id,t_start,x_start,t_end,x_end,kind,family,size,speed\n";
  for (const auto& f : history_) {
    const double t_end = std::min(f.t_end, time_);
    out << f.id << ',' << fmt(f.t0) << ',' << fmt(f.x0) << ',' << fmt(t_end) << ',' << fmt(f.position(t_end)) << ','
        << to_string(f.kind) << ',' << f.family << ',' << fmt(f.size) << ',' << fmt(f.speed) << '\n';
  }
}

} // namespace wft
