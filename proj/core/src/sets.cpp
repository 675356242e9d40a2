#include "gcarpa/sets.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "gcarpa/errors.hpp"

namespace gcarpa::sets {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_dimension(const ConvexSet& set, const Vector& w) {
  const auto dim = set.dimension();
  if (dim && static_cast<std::size_t>(w.size()) != *dim) {
    throw InputError("projection: vector of length " + std::to_string(w.size()) +
                     " for a set in R^" + std::to_string(*dim));
  }
}

void project_affine(const AffineSystem& s, const Vector& w, Vector& out) {
  Vector r;
  s.a.apply_into(w, r);
  r -= s.b;
  s.gram->solve_in_place(r);
  Vector correction;
  s.a.adjoint_into(r, correction);
  out = w - correction;
}

void project_hyperplane(const Hyperplane& h, const Vector& w, Vector& out) {
  const double excess = h.normal.dot(w) - h.offset;
  out = w - excess * h.normal;
}

void project_l2(const L2Ball& ball, const Vector& w, Vector& out) {
  const double dist = (w - ball.center).norm();
  if (dist <= ball.radius) {
    if (&out != &w) out = w;
    return;
  }
  const double scale = ball.radius / dist;
  out = ball.center + scale * (w - ball.center);
}

void project_subspace(const CoordinateSubspace& s, const Vector& w, Vector& out) {
  const auto p = static_cast<Eigen::Index>(s.p);
  if (s.basis == BasisKind::Canonical) {
    if (&out != &w) out = w;
    out.tail(out.size() - p).setZero();
    return;
  }
  if (&out != &w) out.resize(w.size());
  for (Eigen::Index i = 0; i < p; ++i) {
    const double c = s.cosines[static_cast<std::size_t>(i)];
    const double sn = s.sines[static_cast<std::size_t>(i)];
    const double coeff = c * w[i] + sn * w[p + i];
    out[i] = c * coeff;
    out[p + i] = sn * coeff;
  }
  out.tail(out.size() - 2 * p).setZero();
}

}  // namespace

std::string_view to_string(SetKind kind) {
  switch (kind) {
    case SetKind::AffineSystem: return "affine";
    case SetKind::Hyperplane: return "hyperplane";
    case SetKind::L2Ball: return "l2-ball";
    case SetKind::L1Ball: return "l1-ball";
    case SetKind::CoordinateSubspace: return "subspace";
  }
  return "unknown";
}

ConvexSet ConvexSet::affine_system(linalg::LinearMap a, Vector b) {
  auto gram = std::make_shared<const linalg::GramFactorization>(
      linalg::GramFactorization::from_gram(a.gram()));
  return affine_system(std::move(a), std::move(b), std::move(gram));
}

ConvexSet ConvexSet::affine_system(linalg::LinearMap a, Vector b,
                                   std::shared_ptr<const linalg::GramFactorization> gram) {
  if (static_cast<std::size_t>(b.size()) != a.rows()) {
    throw InputError("affine system: b has length " + std::to_string(b.size()) + ", A has " +
                     std::to_string(a.rows()) + " rows");
  }
  if (!b.allFinite()) throw InputError("affine system: non-finite b");
  if (!gram || gram->dimension() != a.rows()) {
    throw InputError("affine system: Gram factorization does not match A");
  }
  return ConvexSet(AffineSystem{std::move(a), std::move(b), std::move(gram)});
}

ConvexSet ConvexSet::hyperplane(const Vector& a, double beta) {
  if (!a.allFinite() || !std::isfinite(beta)) throw InputError("hyperplane: non-finite data");
  const double norm = a.norm();
  if (!(norm > 0.0)) throw InputError("hyperplane: zero normal");
  return ConvexSet(Hyperplane{a / norm, beta / norm});
}

ConvexSet ConvexSet::l2_ball(Vector center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("l2 ball: radius must be positive");
  if (!center.allFinite()) throw InputError("l2 ball: non-finite center");
  return ConvexSet(L2Ball{std::move(center), radius});
}

ConvexSet ConvexSet::l1_ball(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("l1 ball: radius must be positive");
  return ConvexSet(L1Ball{radius});
}

ConvexSet ConvexSet::canonical_subspace(std::size_t n, std::size_t p) {
  if (p > n) throw InputError("subspace: p exceeds n");
  return ConvexSet(CoordinateSubspace{n, p, BasisKind::Canonical, {}, {}});
}

ConvexSet ConvexSet::rotated_subspace(std::size_t n, const std::vector<double>& angles) {
  const std::size_t p = angles.size();
  if (2 * p > n) throw InputError("subspace: rotated construction needs n >= 2p");
  CoordinateSubspace s{n, p, BasisKind::Rotated, {}, {}};
  s.cosines.reserve(p);
  s.sines.reserve(p);
  for (double phi : angles) {
    if (!(phi > 0.0) || phi > std::numbers::pi / 2 + 1e-15) {
      throw InputError("subspace: principal angles must lie in (0, pi/2]");
    }
    s.cosines.push_back(std::cos(phi));
    s.sines.push_back(std::sin(phi));
  }
  return ConvexSet(std::move(s));
}

std::optional<std::size_t> ConvexSet::dimension() const {
  return std::visit(Overloaded{
                        [](const AffineSystem& s) -> std::optional<std::size_t> { return s.a.cols(); },
                        [](const Hyperplane& s) -> std::optional<std::size_t> {
                          return static_cast<std::size_t>(s.normal.size());
                        },
                        [](const L2Ball& s) -> std::optional<std::size_t> {
                          return static_cast<std::size_t>(s.center.size());
                        },
                        [](const L1Ball&) -> std::optional<std::size_t> { return std::nullopt; },
                        [](const CoordinateSubspace& s) -> std::optional<std::size_t> { return s.n; },
                    },
                    value_);
}

ReflectionParams ReflectionParams::make(double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw ParameterError("relaxed reflection: theta must lie in (0, 1], got " + std::to_string(theta));
  }
  return ReflectionParams{theta};
}

double l1_threshold(const Vector& w, double radius) {
  if (w.cwiseAbs().sum() <= radius) return 0.0;
  std::vector<double> mags(static_cast<std::size_t>(w.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) mags[static_cast<std::size_t>(i)] = std::abs(w[i]);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < mags.size(); ++k) {
    cumulative += mags[k];
    const double candidate = (cumulative - radius) / static_cast<double>(k + 1);
    if (mags[k] > candidate) {
      tau = candidate;
    } else {
      break;
    }
  }
  return tau;
}

void project_l1_ball(const Vector& w, double radius, Vector& out) {
  const double tau = l1_threshold(w, radius);
  if (tau == 0.0 && w.cwiseAbs().sum() <= radius) {
    if (&out != &w) out = w;
    return;
  }
  if (&out != &w) out.resize(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double mag = std::abs(w[i]) - tau;
    out[i] = mag > 0.0 ? std::copysign(mag, w[i]) : 0.0;
  }
}

void project_into(const ConvexSet& set, const Vector& w, Vector& out) {
  check_dimension(set, w);
  std::visit(Overloaded{
                 [&](const AffineSystem& s) { project_affine(s, w, out); },
                 [&](const Hyperplane& s) { project_hyperplane(s, w, out); },
                 [&](const L2Ball& s) { project_l2(s, w, out); },
                 [&](const L1Ball& s) { project_l1_ball(w, s.radius, out); },
                 [&](const CoordinateSubspace& s) { project_subspace(s, w, out); },
             },
             set.value());
}

Vector project(const ConvexSet& set, const Vector& w) {
  Vector out;
  project_into(set, w, out);
  return out;
}

void relaxed_reflect_into(const ConvexSet& set, double theta, const Vector& w, Vector& out) {
  if (&out == &w) {
    Vector p;
    project_into(set, w, p);
    out = (1.0 - theta) * w + theta * (2.0 * p - w);
    return;
  }
  project_into(set, w, out);
  out = (1.0 - theta) * w + theta * (2.0 * out - w);
}

Vector relaxed_reflect(const ConvexSet& set, ReflectionParams rp, const Vector& w) {
  ReflectionParams::make(rp.theta);
  Vector out;
  relaxed_reflect_into(set, rp.theta, w, out);
  return out;
}

double membership_residual(const ConvexSet& set, const Vector& w) {
  Vector p;
  project_into(set, w, p);
  return (w - p).norm();
}

linalg::Matrix projector_matrix(const CoordinateSubspace& s) {
  const auto n = static_cast<Eigen::Index>(s.n);
  const auto p = static_cast<Eigen::Index>(s.p);
  linalg::Matrix proj = linalg::Matrix::Zero(n, n);
  if (s.basis == BasisKind::Canonical) {
    proj.topLeftCorner(p, p).setIdentity();
    return proj;
  }
  for (Eigen::Index i = 0; i < p; ++i) {
    const double c = s.cosines[static_cast<std::size_t>(i)];
    const double sn = s.sines[static_cast<std::size_t>(i)];
    proj(i, i) = c * c;
    proj(i, p + i) = c * sn;
    proj(p + i, i) = c * sn;
    proj(p + i, p + i) = sn * sn;
  }
  return proj;
}

}  // namespace gcarpa::sets
