#include "wsum/rate_fit.hpp"

#include <cmath>
#include <vector>

#include "wsum/errors.hpp"

namespace wsum {

RateFit fit_rate(std::span<const std::pair<double, double>> points) {
  std::vector<double> xs, ys;
  for (const auto& [n, d] : points) {
    if (!(n > 0.0) || !(d > 0.0)) continue;
    xs.push_back(std::log(n));
    ys.push_back(std::log(d));
  }
  if (xs.size() < 3) throw DegenerateFitError("fit_rate needs at least 3 positive points");
  const double m = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw DegenerateFitError("fit_rate needs at least two distinct n");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

}  // namespace wsum
