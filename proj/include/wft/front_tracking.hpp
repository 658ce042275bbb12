#pragma once

#include "wft/riemann.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <vector>

namespace wft {

struct FrontTrackingOptions {
  double epsilon = 1e-3;
  double lambda_hat = 0.0;  // speed of non-physical fronts; 0 -> the system's λ̂
  double tv_factor = 4.0;   // K in TV(t) <= K·TV(0)
  std::size_t max_fronts = 1'000'000;
  std::size_t max_events = 10'000'000;
  double length_scale = 1.0;         // scale of the triple-collision shift
  std::optional<ConeDomain> cone;    // restricts Υ to I_t when present
  double upsilon_constant = 0.0;     // C in Υ; 0 -> 10 / (ℓ¹ width of the domain box)
  bool track_upsilon = true;         // only effective for rich systems
  double domain_slack = 0.0;
};

struct Front {
  std::size_t id = 0;
  double t0 = 0.0;
  double x0 = 0.0;
  double speed = 0.0;
  double t_end = std::numeric_limits<double>::infinity();
  int family = 1;  // n + 1 for non-physical fronts
  WaveKind kind = WaveKind::Shock;
  double size = 0.0;  // λ-parametrized size; ‖jump‖₁ for non-physical fronts
  State left;
  State right;

  double position(double t) const { return x0 + speed * (t - t0); }
  bool alive_at(double t) const { return t0 <= t && t < t_end; }
};

struct RunDiagnostics {
  double tv0 = 0.0;
  double upsilon_constant = 0.0;
  std::vector<std::pair<double, double>> tv_history;
  std::vector<std::pair<double, double>> upsilon_history;
  double max_upsilon_increase = 0.0;
  double np_strength = 0.0;
  double max_np_strength = 0.0;
  bool np_budget_exceeded = false;
  std::size_t accurate_events = 0;
  std::size_t simplified_events = 0;
  std::size_t np_crossings = 0;
  std::size_t perturbations = 0;
  std::size_t max_alive_fronts = 0;

  std::size_t events() const { return accurate_events + simplified_events + np_crossings; }
  nlohmann::json to_json() const;
};

/// ε-approximate wave-front tracking solution of one system.
class FrontTrackingRun {
public:
  static FrontTrackingRun build(const SystemDef& sys, const PiecewiseConstantFn& datum, FrontTrackingOptions opts);

  /// Processes every interaction up to and including time t.
  void advance_to(double t);

  /// Snapshot u^ε(t, ·) for 0 <= t <= time().
  PiecewiseConstantFn sample_at(double t) const;

  /// Calls `visit(s, snapshot)` at s = 0 and after each event with s <= t, in time order.
  void for_each_snapshot(double t, const std::function<void(double, const PiecewiseConstantFn&)>& visit) const;

  const SystemDef& system() const { return sys_; }
  const FrontTrackingOptions& options() const { return opts_; }
  double time() const { return time_; }
  double epsilon() const { return opts_.epsilon; }
  double lambda_hat() const { return lambda_hat_; }
  const std::vector<Front>& history() const { return history_; }
  std::vector<Front> alive() const;
  const RunDiagnostics& diagnostics() const { return diag_; }
  std::vector<double> event_times() const;
  double total_variation() const;

  /// Interaction potential of the current front configuration (rich systems only).
  double upsilon() const;

  /// One row per front: id,t_start,x_start,t_end,x_end,kind,family,size,speed.
  void write_fronts_csv(std::ostream& out) const;

private:
  struct Event {
    double t;
    std::size_t index;  // position of the left interacting front in the alive order
    std::vector<std::size_t> inserted;
  };

  FrontTrackingRun(SystemDef sys, FrontTrackingOptions opts);

  std::size_t add_front(double t, double x, int family, WaveKind kind, double size, const State& left,
                        const State& right, double speed);
  void add_wave_fronts(const Wave& w, double t, double x, std::vector<std::size_t>& out, bool split);
  double collision_time(std::size_t left_id, std::size_t right_id) const;
  void refresh_collisions(std::size_t from, std::size_t to);
  void interact(std::size_t k, double t);
  void check_state(const State& u) const;
  double upsilon_of(const std::vector<std::size_t>& order, double t) const;
  std::vector<std::size_t> order_at(double t) const;
  PiecewiseConstantFn snapshot(const std::vector<std::size_t>& order, double t) const;

  SystemDef sys_;
  FrontTrackingOptions opts_;
  double lambda_hat_ = 1.0;
  double time_ = 0.0;
  State far_left_;
  std::vector<Front> history_;
  std::vector<std::size_t> initial_order_;
  std::vector<std::size_t> alive_;
  std::vector<double> collisions_;  // collisions_[k]: meeting time of alive_[k] and alive_[k+1]
  std::vector<Event> events_;
  double tv_ = 0.0;
  RunDiagnostics diag_;
};

} // namespace wft
