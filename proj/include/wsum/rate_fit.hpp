#pragma once

#include <span>
#include <utility>

namespace wsum {

// Least squares of log d on log n: log d ~ intercept + slope * log n.
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root mean square of the log residuals
};

// Points with d <= 0 are skipped; throws DegenerateFitError when fewer
// than 3 usable points remain.
RateFit fit_rate(std::span<const std::pair<double, double>> points);

}  // namespace wsum
