#include "gcarpa/bench/methods.hpp"

#include <cmath>
#include <limits>

#include "gcarpa/errors.hpp"
#include "gcarpa/schedules.hpp"

namespace gcarpa::bench {

ResolvedMethod resolve_for_subspace(const MethodSpec& m, const spectral::PrincipalAngleSpec& spec,
                                    const BenchConfig& cfg) {
  ResolvedMethod out{m, std::numeric_limits<double>::quiet_NaN(), std::nullopt};
  const std::vector<double> ts = spec.t_values();
  switch (m.kind) {
    case MethodKind::Map: {
      double xi = 0.0;
      for (double phi : spec.angles) xi = std::max(xi, std::cos(phi) * std::cos(phi));
      out.xi = xi;
      break;
    }
    case MethodKind::Dr:
      out.spec.mu = 1.0;
      out.spec.gamma = 0.0;
      out.spec.theta = out.spec.eta = 1.0;
      out.xi = spectral::subdominant_modulus(spec, out.spec.params());
      break;
    case MethodKind::Gcarpa:
      if (m.tuning == Tuning::Minimax) {
        const auto mm = spectral::minimax_gamma(ts.front(), ts.back(), m.theta, m.eta, m.mu);
        out.spec.gamma = mm.gamma;
        out.minimax_source = mm.source;
        // Report the factor over every angle, not only the endpoints.
        out.xi = spectral::subdominant_modulus(spec, out.spec.params());
      } else if (m.tuning == Tuning::GridBest) {
        const auto gb = spectral::grid_best(spec, cfg.theta_grid, cfg.eta_grid, cfg.gamma_grid);
        out.spec.gamma = gb.gamma;
        out.spec.theta = gb.theta;
        out.spec.eta = gb.eta;
        out.spec.mu = 1.0;
        out.xi = gb.xi;
      } else {
        out.xi = spectral::subdominant_modulus(spec, m.params());
      }
      out.spec.tuning = Tuning::Fixed;
      break;
    default:
      break;
  }
  return out;
}

std::unique_ptr<operators::Stepper> make_stepper(const MethodSpec& m, const sets::ConvexSet& x_set,
                                                 const sets::ConvexSet& y_set, const ScheduleConfig& schedule) {
  switch (m.kind) {
    case MethodKind::Map:
      return std::make_unique<operators::MapStepper>(x_set, y_set);
    case MethodKind::Dr:
      return std::make_unique<operators::DrStepper>(x_set, y_set);
    case MethodKind::Grap:
      return std::make_unique<operators::GrapStepper>(x_set, y_set, m.grap);
    case MethodKind::Gcarpa:
      if (m.tuning != Tuning::Fixed) throw InputError("method '" + m.label + "': unresolved tuning rule");
      return std::make_unique<operators::GcarpaStepper>(x_set, y_set, m.params());
    case MethodKind::NsDr:
      return std::make_unique<schedules::NsDrStepper>(x_set, y_set, m.relaxation);
    case MethodKind::NsCarpa:
      return std::make_unique<schedules::NsGcarpaStepper>(x_set, y_set, schedule.intervals,
                                                          schedule.initial_state(true));
    case MethodKind::NsGcarpa:
      return std::make_unique<schedules::NsGcarpaStepper>(x_set, y_set, schedule.intervals,
                                                          schedule.initial_state(false));
  }
  throw InputError("unknown method kind");
}

}  // namespace gcarpa::bench
