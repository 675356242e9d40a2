#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "gcarpa/linalg.hpp"
#include "gcarpa/operators.hpp"

namespace gcarpa::spectral {

using operators::SolverParams;

/// Two subspaces of R^n with dim X = p, dim Y = q and principal angles
/// `angles` (radians, nondecreasing, each in (0, pi/2]).
struct PrincipalAngleSpec {
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t q = 0;
  std::vector<double> angles;

  /// Throws InputError on unsorted or out-of-range angles or p > q, p + q > n.
  void validate() const;
  /// t_i = sin^2(phi_i).
  std::vector<double> t_values() const;

  /// phi_i = phiF + i/(p-1) (pi/2 - phiF), i = 0..p-1, in R^{2p}.
  static PrincipalAngleSpec schedule(std::size_t p, double phi_f);
};

/// Evenly spaced angles from phi_f to pi/2 inclusive (phi_f alone when p = 1).
std::vector<double> angle_schedule(std::size_t p, double phi_f);

struct BlockSpectrum {
  linalg::Matrix2 block;
  std::complex<double> lambda_plus;
  std::complex<double> lambda_minus;
  /// Delta, with tr^2 - 4 det = mu^2 Delta.
  double discriminant = 0.0;
  double tau = 0.0;
  double delta_min = 0.0;

  double spectral_radius() const { return std::max(std::abs(lambda_plus), std::abs(lambda_minus)); }
};

/// 2x2 block of F on the principal-angle plane with t = sin^2(phi).
linalg::Matrix2 block_matrix(double t, const SolverParams& p);

/// Closed-form eigenvalues, discriminant, vertex tau and Delta_min.
BlockSpectrum block_eigs(double t, const SolverParams& p);

/// Discriminant expanded: ((1+g)th + a k - 2(1-th) k t)^2 + 4 a k^2 t (1-t).
double discriminant_expanded(double t, const SolverParams& p);

/// max(|lambda_+|, |lambda_-|) of the block at t.
double block_radius(double t, const SolverParams& p);

struct ScalarEigs {
  double lambda_q_minus_p = 0.0;
  double lambda_n_minus_p_minus_q = 0.0;
};

ScalarEigs scalar_eigs(const SolverParams& p);

/// Largest modulus over blocks with t > 0 and over the scalar blocks whose
/// multiplicities are positive.
double subdominant_modulus(const PrincipalAngleSpec& spec, const SolverParams& p);

struct CriticalCandidate {
  double gamma = 0.0;
  /// +1 for the w_+ branch, -1 for w_-.
  int branch = 1;
  /// Coalesced eigenvalue 1 - kappa psi.
  double lambda_star = 0.0;
};

struct CriticalGammas {
  std::vector<CriticalCandidate> admissible;
  /// Branches dropped because the denominator vanished.
  std::vector<int> degenerate;
};

double critical_w(double t, double theta, int branch);
double critical_psi(double t, double theta);

/// gamma_pm(t) = (eta w_pm - theta) / (theta - (1 - eta) w_pm), keeping
/// candidates in [0, 1). Requires t in (0, 1] and theta, eta in [1/2, 1].
CriticalGammas critical_gamma(double t, double theta, double eta);

enum class MinimaxSource { Candidate, Refined, GridFallback };

std::string_view to_string(MinimaxSource s);

struct MinimaxResult {
  double gamma = 0.0;
  double xi = 0.0;
  MinimaxSource source = MinimaxSource::Candidate;
};

/// max(rho(M(tF, g)), rho(M(tP, g))).
double endpoint_objective(double t_f, double t_p, double gamma, double theta, double eta);

/// Minimizes the endpoint objective over gamma in [0, 1 - 1e-6]: critical
/// damping candidates at both endpoints, then a uniform scan with
/// golden-section refinement; the best of all is returned. Requires mu = 1.
MinimaxResult minimax_gamma(double t_f, double t_p, double theta, double eta, double mu = 1.0);

struct GridBest {
  double gamma = 0.0;
  double theta = 0.0;
  double eta = 0.0;
  double xi = 0.0;
};

std::vector<double> default_theta_grid();
std::vector<double> default_gamma_grid();

/// Exhaustive minimization of subdominant_modulus (mu = 1); ties within 1e-14
/// go to the lexicographically smallest (gamma, theta, eta).
GridBest grid_best(const PrincipalAngleSpec& spec, std::vector<double> theta_grid,
                   std::vector<double> eta_grid, std::vector<double> gamma_grid);

struct EndpointCheck {
  bool holds = true;
  double all_max = 0.0;
  double endpoint_max = 0.0;
  /// Index of the maximizing interior angle on failure.
  std::optional<std::size_t> witness;
};

/// Compares max_i rho(M(t_i)) with the value at the two extreme angles.
EndpointCheck endpoint_worst_check(const PrincipalAngleSpec& spec, const SolverParams& p);

}  // namespace gcarpa::spectral
