#include "gcarpa/operators.hpp"

#include <cmath>
#include <string>

#include "gcarpa/errors.hpp"

namespace gcarpa::operators {

namespace {

void check_same_dimension(const ConvexSet& x_set, const ConvexSet& y_set, const Vector& z) {
  for (const ConvexSet* s : {&x_set, &y_set}) {
    const auto dim = s->dimension();
    if (dim && *dim != static_cast<std::size_t>(z.size())) {
      throw InputError("operator: iterate of length " + std::to_string(z.size()) +
                       " for a set in R^" + std::to_string(*dim));
    }
  }
}

void check_unit_interval(const char* what, double value) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw ParameterError(std::string(what) + " must lie in (0, 1], got " + std::to_string(value));
  }
}

}  // namespace

SolverParams SolverParams::make(double mu, double gamma, double theta, double eta) {
  SolverParams p{mu, gamma, theta, eta};
  p.validate();
  return p;
}

void SolverParams::validate() const {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw ParameterError("gamma must lie in [0, 1), got " + std::to_string(gamma));
  }
  check_unit_interval("theta", theta);
  check_unit_interval("eta", eta);
  if (!(mu > 0.0 && mu < 2.0 / (1.0 + gamma))) {
    throw ParameterError("mu must lie in (0, 2/(1+gamma)), got " + std::to_string(mu));
  }
  const double b = beta();
  if (!(b > 0.0 && b < 1.0)) {
    throw ParameterError("averagedness constant outside (0, 1)");
  }
}

Vector apply_A(const ConvexSet& x_set, const ConvexSet& y_set, double theta, double eta,
               const Vector& z) {
  check_unit_interval("theta", theta);
  check_unit_interval("eta", eta);
  check_same_dimension(x_set, y_set, z);
  Vector r;
  sets::relaxed_reflect_into(x_set, theta, z, r);
  sets::relaxed_reflect_into(y_set, eta, r, r);
  return 0.5 * (z + r);
}

Vector apply_B(const ConvexSet& x_set, const ConvexSet& y_set, double theta, const Vector& z) {
  check_unit_interval("theta", theta);
  check_same_dimension(x_set, y_set, z);
  Vector r;
  sets::relaxed_reflect_into(x_set, theta, z, r);
  sets::project_into(y_set, r, r);
  return r;
}

Vector apply_F(const ConvexSet& x_set, const ConvexSet& y_set, const SolverParams& p,
               const Vector& z) {
  p.validate();
  const Vector a = apply_A(x_set, y_set, p.theta, p.eta, z);
  const Vector b = apply_B(x_set, y_set, p.theta, z);
  return (1.0 - p.mu) * z + p.mu * ((1.0 - p.gamma) * a + p.gamma * b);
}

IterateState IterateState::initial(const Vector& z0) {
  IterateState s;
  s.z = z0;
  s.x = z0;
  s.u = z0;
  s.y = z0;
  s.v = z0;
  return s;
}

void gcarpa_kernel(const ConvexSet& x_set, const ConvexSet& y_set, double mu, double gamma,
                   double theta, double eta, IterateState& s) {
  sets::project_into(x_set, s.z, s.x);
  s.u = (1.0 - theta) * s.z + theta * (2.0 * s.x - s.z);
  sets::project_into(y_set, s.u, s.y);
  s.v = (1.0 - eta) * s.u + eta * (2.0 * s.y - s.u);
  s.z = (1.0 - mu) * s.z + mu * ((1.0 - gamma) * 0.5 * (s.z + s.v) + gamma * s.y);
  ++s.k;
}

IterateState step_gcarpa(const ConvexSet& x_set, const ConvexSet& y_set, const SolverParams& p,
                         const IterateState& state) {
  p.validate();
  check_same_dimension(x_set, y_set, state.z);
  IterateState next = state;
  gcarpa_kernel(x_set, y_set, p.mu, p.gamma, p.theta, p.eta, next);
  return next;
}

Vector step_map(const ConvexSet& x_set, const ConvexSet& y_set, const Vector& z) {
  check_same_dimension(x_set, y_set, z);
  Vector w;
  sets::project_into(x_set, z, w);
  sets::project_into(y_set, w, w);
  return w;
}

Vector step_dr(const ConvexSet& x_set, const ConvexSet& y_set, const Vector& z) {
  return apply_A(x_set, y_set, 1.0, 1.0, z);
}

void GrapParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ParameterError("GRAP alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (!(beta > 0.0 && beta < 2.0)) {
    throw ParameterError("GRAP beta must lie in (0, 2), got " + std::to_string(beta));
  }
}

Vector step_grap(const ConvexSet& x_set, const ConvexSet& y_set, const GrapParams& gp,
                 const Vector& z) {
  gp.validate();
  check_same_dimension(x_set, y_set, z);
  Vector p;
  sets::project_into(x_set, z, p);
  const Vector w = (1.0 - gp.beta) * z + gp.beta * p;
  sets::project_into(y_set, w, p);
  const Vector t = (1.0 - gp.beta) * w + gp.beta * p;
  return (1.0 - gp.alpha) * z + gp.alpha * t;
}

Stepper::Stepper(ConvexSet x_set, ConvexSet y_set)
    : x_set_(std::move(x_set)), y_set_(std::move(y_set)) {}

GcarpaStepper::GcarpaStepper(ConvexSet x_set, ConvexSet y_set, SolverParams p)
    : Stepper(std::move(x_set), std::move(y_set)), params_(p) {
  params_.validate();
}

void GcarpaStepper::reset(const Vector& z0) {
  check_same_dimension(x_set_, y_set_, z0);
  state_ = IterateState::initial(z0);
}

void GcarpaStepper::advance() {
  gcarpa_kernel(x_set_, y_set_, params_.mu, params_.gamma, params_.theta, params_.eta, state_);
}

const Vector& GcarpaStepper::solution_estimate() {
  if (params_.gamma > 0.0) return state_.z;
  sets::project_into(x_set_, state_.z, shadow_);
  return shadow_;
}

void MapStepper::reset(const Vector& z0) {
  check_same_dimension(x_set_, y_set_, z0);
  z_ = z0;
  x_ = z0;
}

void MapStepper::advance() {
  sets::project_into(x_set_, z_, x_);
  sets::project_into(y_set_, x_, z_);
}

DrStepper::DrStepper(ConvexSet x_set, ConvexSet y_set, double lambda)
    : Stepper(std::move(x_set), std::move(y_set)), lambda_(lambda) {
  if (!(lambda > 0.0 && lambda < 2.0)) {
    throw ParameterError("DR relaxation must lie in (0, 2), got " + std::to_string(lambda));
  }
}

void DrStepper::reset(const Vector& z0) {
  check_same_dimension(x_set_, y_set_, z0);
  z_ = z0;
  x_ = z0;
  r_ = z0;
  y_ = z0;
  k_ = 0;
}

void DrStepper::advance() { advance_with(lambda_); }

void DrStepper::advance_with(double lambda) {
  sets::project_into(x_set_, z_, x_);
  r_ = 2.0 * x_ - z_;
  sets::project_into(y_set_, r_, y_);
  // 1/2 (z + R_Y R_X z) = z + P_Y(r) - P_X(z)
  z_ = (1.0 - lambda) * z_ + lambda * (z_ + y_ - x_);
  ++k_;
}

const Vector& DrStepper::solution_estimate() {
  sets::project_into(x_set_, z_, shadow_);
  return shadow_;
}

GrapStepper::GrapStepper(ConvexSet x_set, ConvexSet y_set, GrapParams gp)
    : Stepper(std::move(x_set), std::move(y_set)), params_(gp) {
  params_.validate();
}

void GrapStepper::reset(const Vector& z0) {
  check_same_dimension(x_set_, y_set_, z0);
  z_ = z0;
  w_ = z0;
  y_ = z0;
}

void GrapStepper::advance() {
  const double b = params_.beta;
  sets::project_into(x_set_, z_, w_);
  w_ = (1.0 - b) * z_ + b * w_;
  sets::project_into(y_set_, w_, y_);
  w_ = (1.0 - b) * w_ + b * y_;
  z_ = (1.0 - params_.alpha) * z_ + params_.alpha * w_;
}

std::string_view to_string(Termination t) {
  return t == Termination::Converged ? "converged" : "max-iterations";
}

std::optional<std::size_t> RunRecord::first_below(double tol) const {
  for (std::size_t i = 0; i < fpr_history.size(); ++i) {
    if (fpr_history[i] <= tol) return i + 1;
  }
  return std::nullopt;
}

double fixed_point_residual(const Vector& z_next, const Vector& z) {
  return (z_next - z).norm() / std::max(1.0, z.norm());
}

double feasibility_residual(const ConvexSet& x_set, const ConvexSet& y_set, const Vector& w) {
  return std::max(sets::membership_residual(x_set, w), sets::membership_residual(y_set, w));
}

std::size_t support_size(const Vector& y) {
  if (y.size() == 0) return 0;
  const double eps = 1e-10 * std::max(1.0, y.cwiseAbs().maxCoeff());
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (std::abs(y[i]) > eps) ++count;
  }
  return count;
}

RunRecord run_fixed_point(Stepper& stepper, const Vector& z0, const RunOptions& options) {
  if (!(options.tol > 0.0)) throw InputError("run: tol must be positive");
  if (options.kmax < 1) throw InputError("run: kmax must be at least 1");
  if (!z0.allFinite()) throw InputError("run: non-finite starting point");

  const bool feasibility = options.record_feasibility || options.gate_feasibility;
  RunRecord rec;
  rec.fpr_history.reserve(std::min<std::size_t>(options.kmax, 1u << 16));
  if (feasibility) rec.feas_history.reserve(rec.fpr_history.capacity());
  if (options.track_support) rec.support_history.emplace();

  stepper.reset(z0);
  Vector previous = z0;
  for (std::size_t k = 0; k < options.kmax; ++k) {
    previous = stepper.z();
    stepper.advance();
    const Vector& z = stepper.z();
    const double norm = z.norm();
    if (!std::isfinite(norm) || norm > 1e12) {
      throw NumericDivergenceError("run: iterate diverged at step " + std::to_string(k + 1) +
                                   " (" + stepper.name() + ")");
    }
    const double fpr = fixed_point_residual(z, previous);
    rec.fpr_history.push_back(fpr);
    double feas = 0.0;
    if (feasibility) {
      feas = feasibility_residual(stepper.set_x(), stepper.set_y(), stepper.solution_estimate());
      rec.feas_history.push_back(feas);
    }
    if (rec.support_history) rec.support_history->push_back(support_size(stepper.support_vector()));
    rec.iterations = k + 1;
    if (fpr <= options.tol && (!options.gate_feasibility || feas <= options.tol)) {
      rec.terminated = Termination::Converged;
      break;
    }
  }
  rec.final_z = stepper.z();
  rec.solution = stepper.solution_estimate();
  return rec;
}

}  // namespace gcarpa::operators
