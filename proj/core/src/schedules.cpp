#include "gcarpa/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gcarpa/errors.hpp"

namespace gcarpa::schedules {

namespace {

void check_range(const char* what, double lo, double hi, double floor, bool open_floor,
                 double ceil, bool open_ceil) {
  const bool lo_ok = open_floor ? lo > floor : lo >= floor;
  const bool hi_ok = open_ceil ? hi < ceil : hi <= ceil;
  if (!(lo_ok && hi_ok && lo <= hi)) {
    throw ParameterError(std::string("invalid ") + what + " interval [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");
  }
}

double damp_component(double current, double trial, double alpha, double lo, double hi) {
  if (trial == current) return current;
  return std::clamp((1.0 - alpha) * current + alpha * trial, lo, hi);
}

}  // namespace

void ParamIntervals::validate() const {
  check_range("gamma", gamma_min, gamma_max, 0.0, true, 1.0, true);
  check_range("theta", theta_min, theta_max, 0.0, true, 1.0, false);
  check_range("eta", eta_min, eta_max, 0.0, true, 1.0, false);
  if (!(mu > 0.0 && mu < 2.0 / (1.0 + gamma_max))) {
    throw ParameterError("mu must lie in (0, 2/(1+gamma_max)), got " + std::to_string(mu));
  }
}

ScheduleState ScheduleState::initial(const ParamIntervals& iv) {
  iv.validate();
  ScheduleState s;
  s.gamma = 0.5 * (iv.gamma_min + iv.gamma_max);
  s.theta = std::clamp(1.0, iv.theta_min, iv.theta_max);
  s.eta = std::clamp(1.0, iv.eta_min, iv.eta_max);
  s.c_gamma = iv.gamma_max - iv.gamma_min;
  s.c_theta = iv.theta_max - iv.theta_min;
  s.c_eta = iv.eta_max - iv.eta_min;
  return s;
}

ScheduleState ScheduleState::initial_gamma_only(const ParamIntervals& iv) {
  ScheduleState s = initial(iv);
  s.theta = 1.0;
  s.eta = 1.0;
  s.vary_theta = false;
  s.vary_eta = false;
  return s;
}

ParamTriple trial_params(const ScheduleState& s, double rho, const ParamIntervals& iv) {
  if (rho < s.c1) {
    return {s.gamma * s.shrink_gamma, s.theta * s.shrink_theta, s.eta * s.shrink_eta};
  }
  return {std::min(s.gamma / s.shrink_gamma, iv.gamma_max),
          std::min(s.theta / s.shrink_theta, iv.theta_max),
          std::min(s.eta / s.shrink_eta, iv.eta_max)};
}

double damping_weight(std::size_t k, double delta) {
  return std::pow(static_cast<double>(k) + 1.0, -(2.0 + delta));
}

ScheduleState damp_and_clip(const ScheduleState& s, const ParamTriple& trial,
                            const ParamIntervals& iv) {
  const double alpha = damping_weight(s.k, s.delta);
  ScheduleState next = s;
  if (s.vary_gamma) next.gamma = damp_component(s.gamma, trial.gamma, alpha, iv.gamma_min, iv.gamma_max);
  if (s.vary_theta) next.theta = damp_component(s.theta, trial.theta, alpha, iv.theta_min, iv.theta_max);
  if (s.vary_eta) next.eta = damp_component(s.eta, trial.eta, alpha, iv.eta_min, iv.eta_max);
  next.k = s.k + 1;
  return next;
}

double deterministic_schedule(std::size_t k, double base, double amp, double exponent, double lo,
                              double hi) {
  if (!(exponent > 1.0)) {
    throw ParameterError("deterministic schedule needs exponent > 1, got " + std::to_string(exponent));
  }
  if (!(lo <= hi)) throw ParameterError("deterministic schedule: empty interval");
  return std::clamp(base + amp * std::pow(static_cast<double>(k) + 1.0, -exponent), lo, hi);
}

void check_increment_bounds(const ScheduleState& prev, const ScheduleState& next) {
  const double alpha = damping_weight(prev.k, prev.delta);
  const auto check = [&](const char* what, double a, double b, double c) {
    const double slack = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a));
    if (std::abs(b - a) > c * alpha + slack) {
      throw std::logic_error(std::string("schedule increment bound violated for ") + what +
                             " at k=" + std::to_string(prev.k));
    }
  };
  check("gamma", prev.gamma, next.gamma, prev.c_gamma);
  check("theta", prev.theta, next.theta, prev.c_theta);
  check("eta", prev.eta, next.eta, prev.c_eta);
}

double step_ns_gcarpa(const ConvexSet& x_set, const ConvexSet& y_set, const ParamIntervals& iv,
                      ScheduleState& sched, IterateState& iter, TrialRule rule) {
  thread_local Vector previous;
  previous = iter.z;
  operators::gcarpa_kernel(x_set, y_set, iv.mu, sched.gamma, sched.theta, sched.eta, iter);
  const double step = (iter.z - previous).norm();

  double rho = 1.0;
  if (sched.k > 0 && sched.prev_step_norm > 0.0) rho = step / sched.prev_step_norm;
  const ParamTriple trial = rule == TrialRule::Frozen ? sched.current() : trial_params(sched, rho, iv);
  ScheduleState next = damp_and_clip(sched, trial, iv);
  check_increment_bounds(sched, next);
  next.prev_prev_step_norm = sched.prev_step_norm;
  next.prev_step_norm = step;
  sched = next;
  return step;
}

double RelaxationLaw::operator()(std::size_t k) const {
  return std::clamp(base + amp * std::pow(static_cast<double>(k) + 1.0, -exponent), lo, hi);
}

void RelaxationLaw::validate() const {
  if (!(lo > 0.0 && hi < 2.0 && lo <= hi)) {
    throw ParameterError("relaxation law must clip into a sub-interval of (0, 2)");
  }
}

Vector step_ns_dr(const ConvexSet& x_set, const ConvexSet& y_set, double lambda, const Vector& z) {
  if (!(lambda > 0.0 && lambda < 2.0)) {
    throw ParameterError("ns-DR relaxation must lie in (0, 2), got " + std::to_string(lambda));
  }
  return (1.0 - lambda) * z + lambda * operators::step_dr(x_set, y_set, z);
}

NsGcarpaStepper::NsGcarpaStepper(ConvexSet x_set, ConvexSet y_set, ParamIntervals iv,
                                 ScheduleState initial, TrialRule rule)
    : Stepper(std::move(x_set), std::move(y_set)),
      iv_(iv),
      initial_(initial),
      sched_(initial),
      rule_(rule) {
  iv_.validate();
  const bool inside = initial.gamma >= iv.gamma_min && initial.gamma <= iv.gamma_max &&
                      initial.theta >= iv.theta_min && initial.theta <= iv.theta_max &&
                      initial.eta >= iv.eta_min && initial.eta <= iv.eta_max;
  if (!inside) throw ParameterError("initial schedule values outside their intervals");
}

void NsGcarpaStepper::reset(const Vector& z0) {
  sched_ = initial_;
  iter_ = IterateState::initial(z0);
  history_.clear();
}

void NsGcarpaStepper::advance() {
  if (record_history_) history_.push_back(sched_.current());
  step_ns_gcarpa(x_set_, y_set_, iv_, sched_, iter_, rule_);
}

NsDrStepper::NsDrStepper(ConvexSet x_set, ConvexSet y_set, RelaxationLaw law)
    : DrStepper(std::move(x_set), std::move(y_set)), law_(law) {
  law_.validate();
}

void NsDrStepper::advance() { advance_with(law_(k_)); }

}  // namespace gcarpa::schedules
