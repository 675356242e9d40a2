#pragma once

#include <memory>
#include <optional>

#include "gcarpa/bench/config.hpp"
#include "gcarpa/operators.hpp"
#include "gcarpa/spectral.hpp"

namespace gcarpa::bench {

/// A method with its parameters fixed for one subspace instance.
struct ResolvedMethod {
  MethodSpec spec;
  /// Predicted linear factor; NaN when no prediction applies.
  double xi = 0.0;
  std::optional<spectral::MinimaxSource> minimax_source;
};

/// Applies the tuning rule (minimax gamma, grid-best triple) and attaches the
/// spectral prediction. Methods without a prediction pass through with NaN.
ResolvedMethod resolve_for_subspace(const MethodSpec& m, const spectral::PrincipalAngleSpec& spec,
                                    const BenchConfig& cfg);

/// Stepper for a resolved method. Tuning rules other than Fixed must have
/// been resolved already.
std::unique_ptr<operators::Stepper> make_stepper(const MethodSpec& m, const sets::ConvexSet& x_set,
                                                 const sets::ConvexSet& y_set, const ScheduleConfig& schedule);

}  // namespace gcarpa::bench
