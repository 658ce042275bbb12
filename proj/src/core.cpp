#include "wft/core.hpp"
#include "wft/error.hpp"

#include <algorithm>
#include <cmath>

namespace wft {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::NonInvertible: return "NonInvertible";
  case ErrorCode::SingularJacobian: return "SingularJacobian";
  case ErrorCode::NotStrictlyHyperbolic: return "NotStrictlyHyperbolic";
  case ErrorCode::DomainExit: return "DomainExit";
  case ErrorCode::CurveNewtonFailure: return "CurveNewtonFailure";
  case ErrorCode::DegenerateJump: return "DegenerateJump";
  case ErrorCode::RiemannNewtonFailure: return "RiemannNewtonFailure";
  case ErrorCode::TVBlowup: return "TVBlowup";
  case ErrorCode::TooManyFronts: return "TooManyFronts";
  case ErrorCode::OutOfRetainedRange: return "OutOfRetainedRange";
  case ErrorCode::EmptyCone: return "EmptyCone";
  case ErrorCode::NotRich: return "NotRich";
  case ErrorCode::DegenerateFit: return "DegenerateFit";
  case ErrorCode::BadConfig: return "BadConfig";
  case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
  case ErrorCode::TVBlowup:
  case ErrorCode::TooManyFronts:
  case ErrorCode::DomainExit:
  case ErrorCode::EmptyCone:
  case ErrorCode::NotRich:
  case ErrorCode::OutOfRetainedRange:
    return 2;
  case ErrorCode::BadConfig:
  case ErrorCode::Io:
    return 4;
  default:
    return 3;
  }
}

State make_state(std::initializer_list<double> values) {
  State u(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double v : values) u(k++) = v;
  return u;
}

State state_from_json(const nlohmann::json& j) {
  if (j.is_number()) return make_state({j.get<double>()});
  if (!j.is_array() || j.empty() || j.size() > static_cast<std::size_t>(kMaxDim))
    throw Error(ErrorCode::BadConfig, "state must be a number or an array of 1..3 numbers");
  State u(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) u(static_cast<Eigen::Index>(k)) = j[k].get<double>();
  return u;
}

nlohmann::json state_to_json(const State& u) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index k = 0; k < u.size(); ++k) j.push_back(u(k));
  return j;
}

DomainBox::DomainBox(State lower, State upper, State center)
    : lower_(std::move(lower)), upper_(std::move(upper)), center_(std::move(center)) {
  if (lower_.size() != upper_.size() || lower_.size() != center_.size() || lower_.size() == 0)
    throw Error(ErrorCode::BadConfig, "domain box bounds have mismatched dimensions");
  for (Eigen::Index k = 0; k < lower_.size(); ++k) {
    if (!(lower_(k) < upper_(k)))
      throw Error(ErrorCode::BadConfig, "domain box requires lower < upper componentwise");
    if (!(lower_(k) < center_(k) && center_(k) < upper_(k)))
      throw Error(ErrorCode::BadConfig, "domain box center must lie strictly inside");
  }
}

bool DomainBox::contains(const State& u, double slack) const {
  if (u.size() != lower_.size()) return false;
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    if (!std::isfinite(u(k))) return false;
    if (u(k) < lower_(k) - slack || u(k) > upper_(k) + slack) return false;
  }
  return true;
}

DomainBox DomainBox::shrunk(double factor) const {
  State half = 0.5 * (upper_ - lower_) * factor;
  State lo = (center_ - half).cwiseMax(lower_);
  State hi = (center_ + half).cwiseMin(upper_);
  return DomainBox(lo, hi, center_);
}

PiecewiseConstantFn::PiecewiseConstantFn(std::vector<double> breakpoints, std::vector<State> values) {
  if (values.size() != breakpoints.size() + 1)
    throw Error(ErrorCode::BadConfig, "piecewise constant function needs k+1 values for k breakpoints");
  const auto n = values.front().size();
  for (const auto& v : values) {
    if (v.size() != n) throw Error(ErrorCode::BadConfig, "piecewise constant values have mixed dimensions");
    if (!v.allFinite()) throw Error(ErrorCode::BadConfig, "piecewise constant values must be finite");
  }
  for (std::size_t k = 1; k < breakpoints.size(); ++k)
    if (!(breakpoints[k - 1] < breakpoints[k]))
      throw Error(ErrorCode::BadConfig, "breakpoints must be strictly increasing");

  // Zero jumps are dropped.
  values_.push_back(values.front());
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    if (values[k + 1] == values_.back()) continue;
    breakpoints_.push_back(breakpoints[k]);
    values_.push_back(values[k + 1]);
  }
}

PiecewiseConstantFn PiecewiseConstantFn::constant(const State& value) { return {{}, {value}}; }

State PiecewiseConstantFn::eval(double x) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double PiecewiseConstantFn::total_variation(std::optional<Interval> window) const {
  double tv = 0.0;
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    if (window && !window->contains(breakpoints_[k])) continue;
    tv += l1(values_[k + 1] - values_[k]);
  }
  return tv;
}

nlohmann::json PiecewiseConstantFn::to_json() const {
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& v : values_) vals.push_back(state_to_json(v));
  return {{"breakpoints", breakpoints_}, {"values", vals}};
}

PiecewiseConstantFn PiecewiseConstantFn::from_json(const nlohmann::json& j) {
  try {
    std::vector<double> bps = j.at("breakpoints").get<std::vector<double>>();
    std::vector<State> vals;
    for (const auto& v : j.at("values")) vals.push_back(state_from_json(v));
    if (vals.empty()) throw Error(ErrorCode::BadConfig, "values must be nonempty");
    return {std::move(bps), std::move(vals)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadConfig, std::string("malformed piecewise constant JSON: ") + e.what());
  }
}

ConeDomain::ConeDomain(double a, double b, double lambda_hat) : a_(a), b_(b), lambda_hat_(lambda_hat) {
  if (!(a < b)) throw Error(ErrorCode::BadConfig, "cone requires a < b");
  if (!(lambda_hat > 0.0)) throw Error(ErrorCode::BadConfig, "cone requires lambda_hat > 0");
}

Interval ConeDomain::at(double t) const {
  const Interval I{a_ + lambda_hat_ * t, b_ - lambda_hat_ * t};
  if (t < 0.0 || !(I.lo < I.hi)) throw Error(ErrorCode::EmptyCone, "I_t is empty at t = " + std::to_string(t));
  return I;
}

} // namespace wft
