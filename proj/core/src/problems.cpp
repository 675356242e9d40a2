#include "gcarpa/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "gcarpa/errors.hpp"

namespace gcarpa::problems {

Matrix SubspaceInstance::projector_x() const {
  return sets::projector_matrix(set_x.as<sets::CoordinateSubspace>());
}

Matrix SubspaceInstance::projector_y() const {
  return sets::projector_matrix(set_y.as<sets::CoordinateSubspace>());
}

SubspaceInstance make_subspace_instance(std::size_t n, std::size_t p, double phi_f) {
  if (p == 0 || n != 2 * p) {
    throw UnsupportedRegimeError("subspace instance: only n = 2p is supported (n=" + std::to_string(n) +
                                 ", p=" + std::to_string(p) + ")");
  }
  if (!(phi_f > 0.0 && phi_f < std::numbers::pi / 2)) {
    throw InputError("subspace instance: phiF must lie in (0, pi/2)");
  }
  auto spec = spectral::PrincipalAngleSpec::schedule(p, phi_f);
  auto x = ConvexSet::canonical_subspace(n, p);
  auto y = ConvexSet::rotated_subspace(n, spec.angles);
  return SubspaceInstance{n, p, std::move(spec), std::move(x), std::move(y), Matrix::Zero(n, n)};
}

SubspaceInstance make_two_lines(double phi) {
  if (!(phi > 0.0 && phi <= std::numbers::pi / 2)) throw InputError("two lines: angle must lie in (0, pi/2]");
  spectral::PrincipalAngleSpec spec{2, 1, 1, {phi}};
  return SubspaceInstance{2, 1, std::move(spec), ConvexSet::canonical_subspace(2, 1),
                          ConvexSet::rotated_subspace(2, {phi}), Matrix::Zero(2, 2)};
}

std::vector<Vector> unit_gaussian_starts(std::size_t dim, std::size_t count, std::uint64_t seed) {
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = Rng::derive(seed, i);
    Vector z(static_cast<Eigen::Index>(dim));
    for (Eigen::Index j = 0; j < z.size(); ++j) z[j] = rng.normal();
    z /= z.norm();
    out.push_back(std::move(z));
  }
  return out;
}

Vector BallLineInstance::start(Rng& rng) const {
  Vector u(2);
  do {
    u[0] = rng.normal();
    u[1] = rng.normal();
  } while (u.norm() == 0.0);
  return solution + 10.0 * (u / u.norm());
}

Vector BallLineInstance::start(std::uint64_t seed, std::size_t index) const {
  Rng rng = Rng::derive(seed, index);
  return start(rng);
}

BallLineInstance make_ball_line_instance() {
  Vector a(2);
  a << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  return BallLineInstance{ConvexSet::l2_ball(Vector::Zero(2), 1.0), ConvexSet::hyperplane(a, 1.0), a, a};
}

CsSettingInfo setting_info(CsSetting s) {
  switch (s) {
    case CsSetting::Toy: return {s, 500, 2000, 50, Dictionary::Identity, Measurement::Gaussian};
    case CsSetting::P1: return {s, 1024, 2048, 120, Dictionary::Dct, Measurement::Dirac};
    case CsSetting::P2: return {s, 600, 2560, 20, Dictionary::Identity, Measurement::Gaussian};
    case CsSetting::P3: return {s, 256, 1024, 32, Dictionary::Identity, Measurement::Gaussian};
    case CsSetting::P4: return {s, 200, 1000, 3, Dictionary::Dct, Measurement::Restriction};
  }
  throw InputError("unknown compressed-sensing setting");
}

std::string_view to_string(CsSetting s) {
  switch (s) {
    case CsSetting::Toy: return "toy";
    case CsSetting::P1: return "p1";
    case CsSetting::P2: return "p2";
    case CsSetting::P3: return "p3";
    case CsSetting::P4: return "p4";
  }
  return "unknown";
}

CsSetting parse_cs_setting(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (CsSetting s : {CsSetting::Toy, CsSetting::P1, CsSetting::P2, CsSetting::P3, CsSetting::P4}) {
    if (lower == to_string(s)) return s;
  }
  throw InputError("unknown compressed-sensing setting '" + std::string(name) + "'");
}

namespace {

linalg::LinearMap subsampled_dct(std::size_t n, const std::vector<std::size_t>& rows) {
  auto dct = std::make_shared<const linalg::Dct>(n);
  auto idx = std::make_shared<const std::vector<std::size_t>>(rows);
  auto apply = [dct, idx](const Vector& x, Vector& out) {
    thread_local Vector full;
    dct->forward_into(x, full);
    out.resize(static_cast<Eigen::Index>(idx->size()));
    for (std::size_t i = 0; i < idx->size(); ++i) {
      out[static_cast<Eigen::Index>(i)] = full[static_cast<Eigen::Index>((*idx)[i])];
    }
  };
  auto adjoint = [dct, idx, n](const Vector& y, Vector& out) {
    thread_local Vector full;
    full.setZero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < idx->size(); ++i) {
      full[static_cast<Eigen::Index>((*idx)[i])] = y[static_cast<Eigen::Index>(i)];
    }
    dct->adjoint_into(full, out);
  };
  return linalg::LinearMap::implicit(rows.size(), n, apply, adjoint);
}

}  // namespace

CsInstance make_cs_instance(CsSetting setting, std::uint64_t seed) {
  const CsSettingInfo info = setting_info(setting);
  const auto m = static_cast<Eigen::Index>(info.m);
  const auto n = static_cast<Eigen::Index>(info.n);
  Rng rng(seed);

  linalg::LinearMap sensing;
  std::vector<std::size_t> rows;
  if (info.measurement == Measurement::Gaussian) {
    Matrix a(m, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(info.m));
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = scale * rng.normal();
    }
    sensing = linalg::LinearMap::dense(std::move(a));
  } else {
    rows = rng.sample_without_replacement(info.n, info.m);
    std::sort(rows.begin(), rows.end());
    sensing = subsampled_dct(info.n, rows);
  }

  Vector x = Vector::Zero(n);
  for (std::size_t j : rng.sample_without_replacement(info.n, info.kappa)) {
    x[static_cast<Eigen::Index>(j)] = rng.normal();
  }
  Vector b = sensing.apply(x);
  const double radius = x.lpNorm<1>();

  auto set_x = ConvexSet::affine_system(sensing, b);
  auto set_y = ConvexSet::l1_ball(radius);
  return CsInstance{info,        seed,           std::move(sensing), std::move(b), radius,
                    std::move(x), std::move(rows), std::move(set_x),  std::move(set_y)};
}

}  // namespace gcarpa::problems
