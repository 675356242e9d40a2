#include "gcarpa/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gcarpa/errors.hpp"

namespace gcarpa::spectral {

namespace {

constexpr double kGammaCap = 1.0 - 1e-6;
constexpr std::size_t kScanPoints = 2001;

double kappa(const SolverParams& p) { return p.gamma + (1.0 - p.gamma) * p.eta; }

void check_t(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InputError("t must lie in [0, 1], got " + std::to_string(t));
}

void check_half_unit(const char* what, double v) {
  if (!(v >= 0.5 && v <= 1.0)) {
    throw ParameterError(std::string(what) + " must lie in [1/2, 1], got " + std::to_string(v));
  }
}

double golden_minimize(double lo, double hi, double (*f)(double, const void*), const void* ctx) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c, ctx);
  double fd = f(d, ctx);
  while (b - a > 1e-13) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c, ctx);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d, ctx);
    }
  }
  return fc <= fd ? c : d;
}

struct EndpointCtx {
  double t_f;
  double t_p;
  double theta;
  double eta;
};

double endpoint_thunk(double g, const void* ctx) {
  const auto* c = static_cast<const EndpointCtx*>(ctx);
  return endpoint_objective(c->t_f, c->t_p, g, c->theta, c->eta);
}

}  // namespace

void PrincipalAngleSpec::validate() const {
  if (p > q || p + q > n) throw InputError("principal-angle spec: need p <= q and p + q <= n");
  if (angles.size() != p) throw InputError("principal-angle spec: expected one angle per dimension of X");
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (!(angles[i] > 0.0 && angles[i] <= std::numbers::pi / 2 + 1e-15)) {
      throw InputError("principal-angle spec: angles must lie in (0, pi/2]");
    }
    if (i > 0 && angles[i] < angles[i - 1]) {
      throw InputError("principal-angle spec: angles must be nondecreasing");
    }
  }
}

std::vector<double> PrincipalAngleSpec::t_values() const {
  std::vector<double> t(angles.size());
  std::transform(angles.begin(), angles.end(), t.begin(), [](double phi) {
    const double s = std::sin(phi);
    return s * s;
  });
  return t;
}

std::vector<double> angle_schedule(std::size_t p, double phi_f) {
  if (p == 0) throw InputError("angle schedule: p must be positive");
  if (!(phi_f > 0.0 && phi_f <= std::numbers::pi / 2)) {
    throw InputError("angle schedule: phiF must lie in (0, pi/2]");
  }
  if (p == 1) return {phi_f};
  std::vector<double> angles(p);
  const double span = std::numbers::pi / 2 - phi_f;
  for (std::size_t i = 0; i < p; ++i) {
    angles[i] = phi_f + static_cast<double>(i) / static_cast<double>(p - 1) * span;
  }
  angles.back() = std::numbers::pi / 2;
  return angles;
}

PrincipalAngleSpec PrincipalAngleSpec::schedule(std::size_t p, double phi_f) {
  PrincipalAngleSpec spec{2 * p, p, p, angle_schedule(p, phi_f)};
  spec.validate();
  return spec;
}

linalg::Matrix2 block_matrix(double t, const SolverParams& p) {
  check_t(t);
  p.validate();
  const double c = std::sqrt(1.0 - t);
  const double s = std::sqrt(t);
  const double a = 1.0 - 2.0 * p.theta;
  const double k = kappa(p);
  linalg::Matrix2 m;
  m << 1.0 - p.mu * k * t, p.mu * a * k * c * s,
       p.mu * k * c * s, 1.0 - p.mu * ((1.0 + p.gamma) * p.theta + a * k * c * c);
  return m;
}

double discriminant_expanded(double t, const SolverParams& p) {
  const double a = 1.0 - 2.0 * p.theta;
  const double k = kappa(p);
  const double lin = (1.0 + p.gamma) * p.theta + a * k - 2.0 * (1.0 - p.theta) * k * t;
  return lin * lin + 4.0 * a * k * k * t * (1.0 - t);
}

BlockSpectrum block_eigs(double t, const SolverParams& p) {
  BlockSpectrum out;
  out.block = block_matrix(t, p);
  const double k = kappa(p);
  const double c2 = 1.0 - t;
  const double center = 1.0 - 0.5 * p.mu * ((1.0 + p.gamma) * p.theta + k * (1.0 - 2.0 * p.theta * c2));
  out.discriminant = discriminant_expanded(t, p);
  const std::complex<double> root = std::sqrt(std::complex<double>(out.discriminant, 0.0));
  out.lambda_plus = center + 0.5 * p.mu * root;
  out.lambda_minus = center - 0.5 * p.mu * root;
  out.tau = ((1.0 + p.gamma) * (1.0 - p.theta) - (1.0 - 2.0 * p.theta) * k) / (2.0 * k * p.theta);
  out.delta_min = (1.0 - p.gamma * p.gamma) * (2.0 * p.theta - 1.0) * (1.0 - 2.0 * p.eta);
  return out;
}

double block_radius(double t, const SolverParams& p) {
  const double k = kappa(p);
  const double center = 1.0 - 0.5 * p.mu * ((1.0 + p.gamma) * p.theta + k * (1.0 - 2.0 * p.theta * (1.0 - t)));
  const double disc = discriminant_expanded(t, p);
  if (disc >= 0.0) {
    const double h = 0.5 * p.mu * std::sqrt(disc);
    return std::max(std::abs(center + h), std::abs(center - h));
  }
  return std::sqrt(center * center - 0.25 * p.mu * p.mu * disc);
}

ScalarEigs scalar_eigs(const SolverParams& p) {
  p.validate();
  const double b = 1.0 - p.theta - p.eta + 2.0 * p.theta * p.eta;
  return {1.0 - p.mu * (1.0 + p.gamma) * p.theta, (1.0 - p.mu) + p.mu * (1.0 - p.gamma) * b};
}

double subdominant_modulus(const PrincipalAngleSpec& spec, const SolverParams& p) {
  spec.validate();
  p.validate();
  double xi = 0.0;
  for (double t : spec.t_values()) {
    if (t > 0.0) xi = std::max(xi, block_radius(t, p));
  }
  const ScalarEigs se = scalar_eigs(p);
  if (spec.q > spec.p) xi = std::max(xi, std::abs(se.lambda_q_minus_p));
  if (spec.n > spec.p + spec.q) xi = std::max(xi, std::abs(se.lambda_n_minus_p_minus_q));
  return xi;
}

double critical_w(double t, double theta, int branch) {
  const double root = std::sqrt(2.0 * theta - 1.0) * std::sqrt(t * (1.0 - t));
  return (2.0 * theta - 1.0) + 2.0 * (1.0 - theta) * t + 2.0 * branch * root;
}

double critical_psi(double t, double theta) {
  return t + std::sqrt(2.0 * theta - 1.0) * std::sqrt(t * (1.0 - t));
}

CriticalGammas critical_gamma(double t, double theta, double eta) {
  if (!(t > 0.0 && t <= 1.0)) throw InputError("critical gamma: t must lie in (0, 1]");
  check_half_unit("theta", theta);
  check_half_unit("eta", eta);
  CriticalGammas out;
  const bool single_branch = theta == 0.5 || t == 1.0;
  for (int branch : {1, -1}) {
    if (branch == -1 && single_branch) break;
    const double w = critical_w(t, theta, branch);
    const double denom = theta - (1.0 - eta) * w;
    if (std::abs(denom) <= 1e-14) {
      out.degenerate.push_back(branch);
      continue;
    }
    const double g = (eta * w - theta) / denom;
    if (g >= 0.0 && g < 1.0) {
      const double k = g + (1.0 - g) * eta;
      out.admissible.push_back({g, branch, 1.0 - k * critical_psi(t, theta)});
    }
  }
  return out;
}

std::string_view to_string(MinimaxSource s) {
  switch (s) {
    case MinimaxSource::Candidate: return "candidate";
    case MinimaxSource::Refined: return "refined";
    case MinimaxSource::GridFallback: return "grid-fallback";
  }
  return "unknown";
}

double endpoint_objective(double t_f, double t_p, double gamma, double theta, double eta) {
  const SolverParams p{1.0, gamma, theta, eta};
  return std::max(block_radius(t_f, p), block_radius(t_p, p));
}

MinimaxResult minimax_gamma(double t_f, double t_p, double theta, double eta, double mu) {
  if (mu != 1.0) throw UnsupportedRegimeError("minimax gamma is derived for mu = 1 only");
  check_half_unit("theta", theta);
  check_half_unit("eta", eta);
  if (!(t_f > 0.0 && t_f <= t_p && t_p <= 1.0)) {
    throw InputError("minimax gamma: need 0 < tF <= tP <= 1");
  }

  std::optional<MinimaxResult> best;
  for (double t : {t_f, t_p}) {
    for (const CriticalCandidate& c : critical_gamma(t, theta, eta).admissible) {
      const double v = endpoint_objective(t_f, t_p, c.gamma, theta, eta);
      if (!best || v < best->xi) best = MinimaxResult{c.gamma, v, MinimaxSource::Candidate};
    }
  }
  const bool have_candidates = best.has_value();

  std::size_t arg = 0;
  double scan_min = 0.0;
  const double h = kGammaCap / static_cast<double>(kScanPoints - 1);
  for (std::size_t i = 0; i < kScanPoints; ++i) {
    const double v = endpoint_objective(t_f, t_p, static_cast<double>(i) * h, theta, eta);
    if (i == 0 || v < scan_min) {
      scan_min = v;
      arg = i;
    }
  }
  const EndpointCtx ctx{t_f, t_p, theta, eta};
  const double lo = arg == 0 ? 0.0 : static_cast<double>(arg - 1) * h;
  const double hi = arg + 1 >= kScanPoints ? kGammaCap : static_cast<double>(arg + 1) * h;
  double g = golden_minimize(lo, hi, endpoint_thunk, &ctx);
  double v = endpoint_objective(t_f, t_p, g, theta, eta);
  if (scan_min < v) {
    g = static_cast<double>(arg) * h;
    v = scan_min;
  }
  const MinimaxSource scan_source = have_candidates ? MinimaxSource::Refined : MinimaxSource::GridFallback;
  // Scan noise must not displace an exact candidate.
  if (!best || v < best->xi - 1e-15) best = MinimaxResult{g, v, scan_source};
  return *best;
}

std::vector<double> default_theta_grid() { return {0.5, 0.6, 0.7, 0.8, 0.9, 1.0}; }

std::vector<double> default_gamma_grid() {
  std::vector<double> g(20);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = static_cast<double>(i) / 20.0;
  return g;
}

GridBest grid_best(const PrincipalAngleSpec& spec, std::vector<double> theta_grid,
                   std::vector<double> eta_grid, std::vector<double> gamma_grid) {
  if (theta_grid.empty() || eta_grid.empty() || gamma_grid.empty()) {
    throw InputError("grid search: grids must be nonempty");
  }
  spec.validate();
  std::sort(theta_grid.begin(), theta_grid.end());
  std::sort(eta_grid.begin(), eta_grid.end());
  std::sort(gamma_grid.begin(), gamma_grid.end());
  const std::vector<double> ts = spec.t_values();

  std::optional<GridBest> best;
  for (double g : gamma_grid) {
    for (double th : theta_grid) {
      for (double et : eta_grid) {
        const SolverParams p = SolverParams::make(1.0, g, th, et);
        double xi = 0.0;
        for (double t : ts) {
          if (t > 0.0) xi = std::max(xi, block_radius(t, p));
        }
        const ScalarEigs se = scalar_eigs(p);
        if (spec.q > spec.p) xi = std::max(xi, std::abs(se.lambda_q_minus_p));
        if (spec.n > spec.p + spec.q) xi = std::max(xi, std::abs(se.lambda_n_minus_p_minus_q));
        if (!best || xi < best->xi - 1e-14) best = GridBest{g, th, et, xi};
      }
    }
  }
  return *best;
}

EndpointCheck endpoint_worst_check(const PrincipalAngleSpec& spec, const SolverParams& p) {
  spec.validate();
  p.validate();
  EndpointCheck out;
  const std::vector<double> ts = spec.t_values();
  if (ts.empty()) return out;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double r = block_radius(ts[i], p);
    if (r > out.all_max) {
      out.all_max = r;
      arg = i;
    }
  }
  out.endpoint_max = std::max(block_radius(ts.front(), p), block_radius(ts.back(), p));
  out.holds = out.all_max <= out.endpoint_max + 1e-12;
  if (!out.holds) out.witness = arg;
  return out;
}

}  // namespace gcarpa::spectral
