#include "gcarpa/bench/rate_fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gcarpa/errors.hpp"

namespace gcarpa::bench {

RateFit fit_empirical_rate(const std::vector<double>& fpr, double floor) {
  const auto above = static_cast<std::size_t>(
      std::count_if(fpr.begin(), fpr.end(), [floor](double v) { return v > floor; }));
  if (above < 50) {
    throw InsufficientDataError("rate fit: " + std::to_string(above) + " entries above the floor, need 50");
  }
  std::size_t last = fpr.size() - 1;
  while (fpr[last] <= floor) --last;

  RateFit fit;
  fit.window_start = static_cast<std::size_t>(std::floor(0.6 * static_cast<double>(last)));
  fit.window_end = static_cast<std::size_t>(std::floor(0.95 * static_cast<double>(last)));
  if (fit.window_end <= fit.window_start + 10) {
    throw InsufficientDataError("rate fit: tail window too short");
  }

  double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = fit.window_start; k <= fit.window_end; ++k) {
    if (!(fpr[k] > floor)) continue;
    const double x = static_cast<double>(k - fit.window_start);
    const double y = std::log(fpr[k]);
    n += 1.0;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (n < 2.0 || denom <= 0.0) throw InsufficientDataError("rate fit: degenerate window");
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;

  double ss = 0.0;
  for (std::size_t k = fit.window_start; k <= fit.window_end; ++k) {
    if (!(fpr[k] > floor)) continue;
    const double r = std::log(fpr[k]) - (intercept + slope * static_cast<double>(k - fit.window_start));
    ss += r * r;
  }
  fit.r_hat = std::exp(slope);
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace gcarpa::bench
