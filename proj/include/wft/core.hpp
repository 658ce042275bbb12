#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <optional>
#include <vector>

namespace wft {

inline constexpr int kMaxDim = 3;

/// Physical (or conserved) state; dimension 1..3, stored inline.
using State = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

State make_state(std::initializer_list<double> values);
State state_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const State& u);

/// ℓ¹ norm; the single norm used for TV, distances and diameters.
inline double l1(const State& u) { return u.cwiseAbs().sum(); }

struct Interval {
  double lo;
  double hi;

  double length() const { return hi > lo ? hi - lo : 0.0; }
  bool contains(double x) const { return x >= lo && x < hi; }
};

/// Box housing the admissible states Ω and the reference state ū.
class DomainBox {
public:
  DomainBox(State lower, State upper, State center);

  const State& lower() const { return lower_; }
  const State& upper() const { return upper_; }
  const State& center() const { return center_; }
  int dim() const { return static_cast<int>(lower_.size()); }

  bool contains(const State& u, double slack = 0.0) const;
  /// Sum of side lengths.
  double l1_width() const { return (upper_ - lower_).sum(); }
  /// Maps t ∈ [0,1]^n to the box.
  State point(const State& t) const { return lower_ + (upper_ - lower_).cwiseProduct(t); }
  /// Concentric box scaled by `factor` about the center (clipped to this box).
  DomainBox shrunk(double factor) const;

private:
  State lower_, upper_, center_;
};

/// Right-continuous piecewise constant function of x.
class PiecewiseConstantFn {
public:
  PiecewiseConstantFn(std::vector<double> breakpoints, std::vector<State> values);
  static PiecewiseConstantFn constant(const State& value);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<State>& values() const { return values_; }
  int dim() const { return static_cast<int>(values_.front().size()); }

  State eval(double x) const;
  /// Σ ‖jump‖₁ over breakpoints in the half-open window [lo, hi) (whole line if absent).
  double total_variation(std::optional<Interval> window = std::nullopt) const;

  nlohmann::json to_json() const;
  static PiecewiseConstantFn from_json(const nlohmann::json& j);

private:
  std::vector<double> breakpoints_;
  std::vector<State> values_;
};

/// Shrinking dependence cone I_t = [a + λ̂t, b − λ̂t].
class ConeDomain {
public:
  ConeDomain(double a, double b, double lambda_hat);

  double a() const { return a_; }
  double b() const { return b_; }
  double lambda_hat() const { return lambda_hat_; }
  /// Supremum of the times with nonempty I_t.
  double max_time() const { return (b_ - a_) / (2.0 * lambda_hat_); }
  /// Throws EmptyCone when I_t is empty.
  Interval at(double t) const;

private:
  double a_, b_, lambda_hat_;
};

} // namespace wft
