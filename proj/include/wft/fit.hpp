#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <vector>

namespace wft {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_lo = 0.0;  // confidence band from the Student-t quantile
  double slope_hi = 0.0;
  double r_squared = 1.0;
  std::size_t points = 0;

  nlohmann::json to_json() const;
};

/// OLS of log y on log x. Throws DegenerateFit for fewer than 2 points or nonpositive data.
LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y, double confidence = 0.95);

} // namespace wft
