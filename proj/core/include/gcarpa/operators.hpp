#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcarpa/linalg.hpp"
#include "gcarpa/sets.hpp"

namespace gcarpa::operators {

using linalg::Vector;
using sets::ConvexSet;

/// (mu, gamma, theta, eta) of the composed relaxed-projection map.
struct SolverParams {
  double mu = 1.0;
  double gamma = 0.5;
  double theta = 1.0;
  double eta = 1.0;

  /// Validated constructor; throws ParameterError.
  static SolverParams make(double mu, double gamma, double theta, double eta);
  void validate() const;
  /// Averagedness constant (1 + gamma) mu / 2.
  double beta() const { return 0.5 * (1.0 + gamma) * mu; }
};

/// 1/2 (z + R_Y^eta R_X^theta z).
Vector apply_A(const ConvexSet& x_set, const ConvexSet& y_set, double theta, double eta,
               const Vector& z);
/// P_Y R_X^theta z.
Vector apply_B(const ConvexSet& x_set, const ConvexSet& y_set, double theta, const Vector& z);
/// (1 - mu) z + mu ((1 - gamma) A z + gamma B z).
Vector apply_F(const ConvexSet& x_set, const ConvexSet& y_set, const SolverParams& p,
               const Vector& z);

/// Iterates of one generalized step; x, u, y, v hold the values produced by
/// the most recent step.
struct IterateState {
  Vector z;
  Vector x;
  Vector u;
  Vector y;
  Vector v;
  std::size_t k = 0;

  static IterateState initial(const Vector& z0);
};

/// One generalized step on `state` without parameter validation. Shared by
/// the stationary and the non-stationary drivers.
void gcarpa_kernel(const ConvexSet& x_set, const ConvexSet& y_set, double mu, double gamma,
                   double theta, double eta, IterateState& state);

IterateState step_gcarpa(const ConvexSet& x_set, const ConvexSet& y_set, const SolverParams& p,
                         const IterateState& state);

/// P_Y P_X z.
Vector step_map(const ConvexSet& x_set, const ConvexSet& y_set, const Vector& z);
/// 1/2 (z + R_Y R_X z).
Vector step_dr(const ConvexSet& x_set, const ConvexSet& y_set, const Vector& z);

/// Outer averaging `alpha` over relaxed projections T_S = (1 - beta) Id + beta P_S.
struct GrapParams {
  double alpha = 1.0;
  double beta = 1.9;

  void validate() const;
};

/// (1 - alpha) z + alpha T_Y T_X z.
Vector step_grap(const ConvexSet& x_set, const ConvexSet& y_set, const GrapParams& gp,
                 const Vector& z);

/// Iteration driven by run_fixed_point. Implementations own their buffers so a
/// step allocates nothing beyond what the set projections need.
class Stepper {
 public:
  Stepper(ConvexSet x_set, ConvexSet y_set);
  virtual ~Stepper() = default;

  virtual std::string name() const = 0;
  virtual void reset(const Vector& z0) = 0;
  /// Replace the current iterate by its successor.
  virtual void advance() = 0;
  virtual const Vector& z() const = 0;
  /// Output of the most recent Y-side projection (support tracking).
  virtual const Vector& support_vector() const = 0;
  /// Point whose distances to X and Y form the feasibility residual: z itself
  /// when Fix = X cap Y, otherwise its shadow on X.
  virtual const Vector& solution_estimate() = 0;

  const ConvexSet& set_x() const { return x_set_; }
  const ConvexSet& set_y() const { return y_set_; }

 protected:
  ConvexSet x_set_;
  ConvexSet y_set_;
};

class GcarpaStepper : public Stepper {
 public:
  GcarpaStepper(ConvexSet x_set, ConvexSet y_set, SolverParams p);

  std::string name() const override { return "gcarpa"; }
  void reset(const Vector& z0) override;
  void advance() override;
  const Vector& z() const override { return state_.z; }
  const Vector& support_vector() const override { return state_.y; }
  const Vector& solution_estimate() override;
  const IterateState& state() const { return state_; }
  const SolverParams& params() const { return params_; }

 private:
  SolverParams params_;
  IterateState state_;
  Vector shadow_;
};

class MapStepper : public Stepper {
 public:
  using Stepper::Stepper;

  std::string name() const override { return "map"; }
  void reset(const Vector& z0) override;
  void advance() override;
  const Vector& z() const override { return z_; }
  const Vector& support_vector() const override { return z_; }
  const Vector& solution_estimate() override { return z_; }

 private:
  Vector z_;
  Vector x_;
};

/// Relaxed DR: z+ = (1 - lambda) z + lambda 1/2 (z + R_Y R_X z); lambda = 1
/// is classical DR.
class DrStepper : public Stepper {
 public:
  DrStepper(ConvexSet x_set, ConvexSet y_set, double lambda = 1.0);

  std::string name() const override { return "dr"; }
  void reset(const Vector& z0) override;
  void advance() override;
  const Vector& z() const override { return z_; }
  const Vector& support_vector() const override { return y_; }
  const Vector& solution_estimate() override;

 protected:
  void advance_with(double lambda);
  std::size_t k_ = 0;

 private:
  double lambda_;
  Vector z_;
  Vector x_;
  Vector r_;
  Vector y_;
  Vector shadow_;
};

class GrapStepper : public Stepper {
 public:
  GrapStepper(ConvexSet x_set, ConvexSet y_set, GrapParams gp);

  std::string name() const override { return "grap"; }
  void reset(const Vector& z0) override;
  void advance() override;
  const Vector& z() const override { return z_; }
  const Vector& support_vector() const override { return y_; }
  const Vector& solution_estimate() override { return z_; }

 private:
  GrapParams params_;
  Vector z_;
  Vector w_;
  Vector y_;
};

enum class Termination { Converged, MaxIterations };

std::string_view to_string(Termination t);

struct RunOptions {
  double tol = 1e-12;
  std::size_t kmax = 5000;
  bool track_support = false;
  /// Record max(dist_X, dist_Y) of the solution estimate at every step.
  bool record_feasibility = true;
  /// Additionally require the feasibility residual to be <= tol.
  bool gate_feasibility = false;
};

struct RunRecord {
  std::vector<double> fpr_history;
  std::vector<double> feas_history;
  std::optional<std::vector<std::size_t>> support_history;
  std::size_t iterations = 0;
  Termination terminated = Termination::MaxIterations;
  Vector final_z;
  Vector solution;

  /// 1-based index of the first step with FPR <= tol, if any.
  std::optional<std::size_t> first_below(double tol) const;
};

/// ||z+ - z|| / max(1, ||z||).
double fixed_point_residual(const Vector& z_next, const Vector& z);

/// max(dist_X(w), dist_Y(w)).
double feasibility_residual(const ConvexSet& x_set, const ConvexSet& y_set, const Vector& w);

/// Entries with |y_i| > 1e-10 max(1, ||y||_inf).
std::size_t support_size(const Vector& y);

/// Iterate until FPR <= tol (and, when gated, the feasibility residual) or
/// kmax steps. Throws NumericDivergenceError when an iterate is non-finite or
/// its norm exceeds 1e12.
RunRecord run_fixed_point(Stepper& stepper, const Vector& z0, const RunOptions& options);

}  // namespace gcarpa::operators
