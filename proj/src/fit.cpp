#include "wft/fit.hpp"

#include "wft/error.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <cmath>

namespace wft {

nlohmann::json LogLogFit::to_json() const {
  return {{"slope", slope}, {"intercept", intercept}, {"slope_lo", slope_lo}, {"slope_hi", slope_hi},
          {"r_squared", r_squared}, {"points", points}};
}

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y, double confidence) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::DegenerateFit, "log-log fit needs at least 2 points");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw Error(ErrorCode::DegenerateFit, "log-log fit needs positive data");
    lx[k] = std::log(x[k]);
    ly[k] = std::log(y[k]);
    mx += lx[k];
    my += ly[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
    syy += (ly[k] - my) * (ly[k] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::DegenerateFit, "log-log fit needs distinct abscissae");

  LogLogFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double e = ly[k] - (fit.intercept + fit.slope * lx[k]);
    sse += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  fit.slope_lo = fit.slope_hi = fit.slope;
  if (n > 2) {
    const double dof = static_cast<double>(n - 2);
    const boost::math::students_t dist(dof);
    const double q = boost::math::quantile(boost::math::complement(dist, 0.5 * (1.0 - confidence)));
    const double half = q * std::sqrt(sse / dof / sxx);
    fit.slope_lo = fit.slope - half;
    fit.slope_hi = fit.slope + half;
  }
  return fit;
}

} // namespace wft
