#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gcarpa/operators.hpp"

namespace gcarpa::schedules {

using linalg::Vector;
using operators::IterateState;
using sets::ConvexSet;

struct ParamIntervals {
  double gamma_min = 0.05;
  double gamma_max = 0.95;
  double theta_min = 0.5;
  double theta_max = 1.0;
  double eta_min = 0.5;
  double eta_max = 1.0;
  double mu = 1.0;

  /// Throws ParameterError on bad ordering or ranges.
  void validate() const;
};

struct ParamTriple {
  double gamma = 0.0;
  double theta = 0.0;
  double eta = 0.0;
};

/// Schedule for the multiplicative damped rule. Components with a `vary_*`
/// flag cleared keep their initial value forever.
struct ScheduleState {
  std::size_t k = 0;
  double gamma = 0.5;
  double theta = 1.0;
  double eta = 1.0;
  double c_gamma = 0.9;
  double c_theta = 0.5;
  double c_eta = 0.5;
  double delta = 0.5;
  double shrink_gamma = 0.95;
  double shrink_theta = 0.95;
  double shrink_eta = 0.95;
  double c1 = 0.9;
  double prev_step_norm = 0.0;
  double prev_prev_step_norm = 0.0;
  bool vary_gamma = true;
  bool vary_theta = true;
  bool vary_eta = true;

  /// gamma_0 at the interval midpoint, theta_0 = eta_0 = 1 (clipped), c_* equal
  /// to the interval widths.
  static ScheduleState initial(const ParamIntervals& iv);
  /// Same, with theta and eta frozen at 1.
  static ScheduleState initial_gamma_only(const ParamIntervals& iv);

  ParamTriple current() const { return {gamma, theta, eta}; }
};

/// Multiplicative trial: shrink by the factors when rho < c1, else expand and
/// cap at the interval maxima.
ParamTriple trial_params(const ScheduleState& state, double rho, const ParamIntervals& iv);

/// Damping weight 1/(k+1)^(2+delta).
double damping_weight(std::size_t k, double delta);

/// next = clip((1 - a_k) current + a_k trial); k advances by one. A component
/// whose trial equals its current value is kept bit-for-bit.
ScheduleState damp_and_clip(const ScheduleState& state, const ParamTriple& trial,
                            const ParamIntervals& iv);

/// clip(base + amp / (k+1)^exponent) to [lo, hi]; exponent must exceed 1.
double deterministic_schedule(std::size_t k, double base, double amp, double exponent, double lo,
                              double hi);

/// Throws std::logic_error when |next - prev| > c / (k+1)^(2+delta) for any
/// component (k taken from `prev`).
void check_increment_bounds(const ScheduleState& prev, const ScheduleState& next);

enum class TrialRule {
  Multiplicative,
  /// trial == current: the schedule never moves.
  Frozen,
};

/// One generalized step with the current schedule values, then the schedule
/// update driven by rho_k = ||z^{k+1} - z^k|| / ||z^k - z^{k-1}|| (rho_0 = 1).
/// Returns the new step norm ||z^{k+1} - z^k||.
double step_ns_gcarpa(const ConvexSet& x_set, const ConvexSet& y_set, const ParamIntervals& iv,
                      ScheduleState& sched, IterateState& iter,
                      TrialRule rule = TrialRule::Multiplicative);

/// lambda_k = clip(base + amp / (k+1)^exponent, lo, hi).
struct RelaxationLaw {
  double base = 1.0;
  double amp = 0.9;
  double exponent = 0.5;
  double lo = 1e-3;
  double hi = 1.99;

  double operator()(std::size_t k) const;
  void validate() const;
};

/// (1 - lambda) z + lambda 1/2 (z + R_Y R_X z); lambda outside (0, 2) throws.
Vector step_ns_dr(const ConvexSet& x_set, const ConvexSet& y_set, double lambda, const Vector& z);

/// ns-gCARPA / ns-CARPA as a Stepper. Every schedule update is checked
/// against the increment bound.
class NsGcarpaStepper : public operators::Stepper {
 public:
  NsGcarpaStepper(ConvexSet x_set, ConvexSet y_set, ParamIntervals iv, ScheduleState initial,
                  TrialRule rule = TrialRule::Multiplicative);

  std::string name() const override { return "ns-gcarpa"; }
  void reset(const Vector& z0) override;
  void advance() override;
  const Vector& z() const override { return iter_.z; }
  const Vector& support_vector() const override { return iter_.y; }
  const Vector& solution_estimate() override { return iter_.z; }

  const ScheduleState& schedule() const { return sched_; }
  /// (gamma, theta, eta) used at each step so far.
  const std::vector<ParamTriple>& history() const { return history_; }
  void set_record_history(bool on) { record_history_ = on; }

 private:
  ParamIntervals iv_;
  ScheduleState initial_;
  ScheduleState sched_;
  TrialRule rule_;
  IterateState iter_;
  bool record_history_ = false;
  std::vector<ParamTriple> history_;
};

class NsDrStepper : public operators::DrStepper {
 public:
  NsDrStepper(ConvexSet x_set, ConvexSet y_set, RelaxationLaw law);

  std::string name() const override { return "ns-dr"; }
  void advance() override;

 private:
  RelaxationLaw law_;
};

}  // namespace gcarpa::schedules
