#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "gcarpa/rng.hpp"
#include "gcarpa/sets.hpp"
#include "oracles.hpp"

namespace fixture {

using gcarpa::Rng;
using gcarpa::sets::ConvexSet;
using oracle::Matrix;
using oracle::Vector;

struct SampledSet {
  std::string label;
  ConvexSet set;
  std::size_t dim;
  // Draws a point of the set without going through the library projection.
  std::function<Vector(Rng&)> sample;
};

inline std::vector<SampledSet> random_sets(Rng& rng) {
  std::vector<SampledSet> out;

  {
    const std::size_t n = 6;
    Matrix a = oracle::gaussian(rng, 3, n);
    Vector b = oracle::gaussian(rng, 3);
    out.push_back({"affine", ConvexSet::affine_system(gcarpa::linalg::LinearMap::dense(a), b), n,
                   [a, b, n](Rng& r) {
                     Vector v = 3.0 * oracle::gaussian(r, n);
                     Vector lam = oracle::lu_solve(a * a.transpose(), a * v - b);
                     return Vector(v - a.transpose() * lam);
                   }});
  }
  {
    const std::size_t n = 5;
    Vector a = oracle::gaussian(rng, n);
    const double beta = rng.normal();
    const Vector unit = a / a.norm();
    const double off = beta / a.norm();
    out.push_back({"hyperplane", ConvexSet::hyperplane(a, beta), n, [unit, off, n](Rng& r) {
                     Vector v = 3.0 * oracle::gaussian(r, n);
                     return Vector(v - (unit.dot(v) - off) * unit);
                   }});
  }
  {
    const std::size_t n = 4;
    Vector c = oracle::gaussian(rng, n);
    const double radius = 0.5 + rng.uniform();
    out.push_back({"l2-ball", ConvexSet::l2_ball(c, radius), n, [c, radius, n](Rng& r) {
                     Vector d = oracle::gaussian(r, n);
                     d /= d.norm();
                     return Vector(c + radius * std::pow(r.uniform(), 1.0 / static_cast<double>(n)) * d);
                   }});
  }
  {
    const std::size_t n = 7;
    const double radius = 0.5 + rng.uniform();
    out.push_back({"l1-ball", ConvexSet::l1_ball(radius), n, [radius, n](Rng& r) {
                     Vector g = oracle::gaussian(r, n);
                     return Vector(g / g.lpNorm<1>() * radius * r.uniform());
                   }});
  }
  {
    const std::size_t n = 6, p = 2;
    out.push_back({"canonical-subspace", ConvexSet::canonical_subspace(n, p), n, [n, p](Rng& r) {
                     Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
                     for (std::size_t i = 0; i < p; ++i) v(static_cast<Eigen::Index>(i)) = r.normal();
                     return v;
                   }});
  }
  {
    const std::size_t n = 7;
    std::vector<double> angles{0.2 + rng.uniform(), 0.3 + rng.uniform(), std::numbers::pi / 2};
    out.push_back({"rotated-subspace", ConvexSet::rotated_subspace(n, angles), n, [angles, n](Rng& r) {
                     const std::size_t p = angles.size();
                     Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
                     for (std::size_t i = 0; i < p; ++i) {
                       const double c = r.normal();
                       v(static_cast<Eigen::Index>(i)) += c * std::cos(angles[i]);
                       v(static_cast<Eigen::Index>(p + i)) += c * std::sin(angles[i]);
                     }
                     return v;
                   }});
  }
  return out;
}

struct PropertyReport {
  std::size_t trials = 0;
  double worst_idempotence = 0.0;
  // max of (||Pu - Pv||^2 - <Pu - Pv, u - v>) / ||u - v||^2; <= 0 when firmly nonexpansive
  double worst_firm = -INFINITY;
  // max of <w - Pw, y - Pw> / (||w - Pw|| ||y - Pw||); <= 0 when the variational inequality holds
  double worst_variational = -INFINITY;
};

inline PropertyReport projection_properties(const SampledSet& s, Rng& rng, std::size_t trials) {
  using gcarpa::sets::project;
  PropertyReport rep;
  for (std::size_t t = 0; t < trials; ++t) {
    const Vector w = 4.0 * oracle::gaussian(rng, s.dim);
    const Vector pw = project(s.set, w);
    const Vector ppw = project(s.set, pw);
    rep.worst_idempotence = std::max(rep.worst_idempotence, (ppw - pw).norm() / std::max(1.0, pw.norm()));

    const Vector u = 4.0 * oracle::gaussian(rng, s.dim);
    const Vector pu = project(s.set, u);
    const double firm = (pw - pu).dot(w - u) - (pw - pu).squaredNorm();
    rep.worst_firm = std::max(rep.worst_firm, -firm / std::max(1e-300, (w - u).squaredNorm()));

    const Vector y = s.sample(rng);
    const double denom = std::max(1e-300, (w - pw).norm() * (y - pw).norm());
    rep.worst_variational = std::max(rep.worst_variational, (w - pw).dot(y - pw) / denom);
    ++rep.trials;
  }
  return rep;
}

}  // namespace fixture
