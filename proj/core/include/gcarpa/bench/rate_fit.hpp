#pragma once

#include <cstddef>
#include <vector>

namespace gcarpa::bench {

struct RateFit {
  double r_hat = 0.0;
  std::size_t window_start = 0;
  std::size_t window_end = 0;
  /// Root-mean-square residual of the log-linear fit.
  double residual = 0.0;
};

/// Least-squares slope of log(FPR_k) over k in [0.6 K, 0.95 K], K the last
/// index with FPR above `floor`; r_hat = exp(slope). Throws
/// InsufficientDataError with fewer than 50 entries above the floor or a
/// window of at most 10 indices.
RateFit fit_empirical_rate(const std::vector<double>& fpr, double floor = 1e-13);

}  // namespace gcarpa::bench
