#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fixtures.hpp"
#include "gcarpa/errors.hpp"
#include "gcarpa/sets.hpp"
#include "oracles.hpp"

using namespace gcarpa;
using sets::ConvexSet;
using linalg::Vector;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("l1 projection examples") {
  auto ball = ConvexSet::l1_ball(1.0);
  CHECK((sets::project(ball, vec({3.0, 0.0})) - vec({1.0, 0.0})).norm() <= 1e-15);
  CHECK(sets::l1_threshold(vec({3.0, 0.0}), 1.0) == doctest::Approx(2.0));

  Vector w = vec({0.8, 0.6, -0.4});
  Vector got = sets::project(ball, w);
  Vector want = oracle::l1_projection_bruteforce(w, 1.0);
  CHECK((got - want).norm() <= 1e-12);

  Vector inside = vec({0.2, -0.3});
  CHECK((sets::project(ball, inside) - inside).norm() == 0.0);
  CHECK(sets::l1_threshold(inside, 1.0) == 0.0);
}

TEST_CASE("l1 projection matches the orthant brute-force oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(7);
    const double radius = 0.2 + 2.0 * rng.uniform();
    Vector w = 2.0 * oracle::gaussian(rng, n);
    Vector got = sets::project(ConvexSet::l1_ball(radius), w);
    Vector want = oracle::l1_projection_bruteforce(w, radius);
    CHECK((got - want).norm() <= 1e-10);
  }
}

TEST_CASE("l1 projection keeps signs and shrinks magnitudes") {
  Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    Vector w = 3.0 * oracle::gaussian(rng, 20);
    Vector y = sets::project(ConvexSet::l1_ball(1.5), w);
    CHECK(y.lpNorm<1>() <= 1.5 * (1.0 + 1e-12));
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      CHECK(y(i) * w(i) >= 0.0);
      CHECK(std::abs(y(i)) <= std::abs(w(i)));
    }
  }
}

TEST_CASE("projection onto points already in the set is the identity") {
  Rng rng(23);
  for (const auto& s : fixture::random_sets(rng)) {
    CAPTURE(s.label);
    for (int trial = 0; trial < 20; ++trial) {
      Vector y = s.sample(rng);
      CHECK((sets::project(s.set, y) - y).norm() <= 1e-12 * std::max(1.0, y.norm()));
      CHECK(sets::membership_residual(s.set, y) <= 1e-12 * std::max(1.0, y.norm()));
    }
  }
}

TEST_CASE("projections are idempotent, firmly nonexpansive and satisfy the variational inequality") {
  Rng rng(24);
  for (const auto& s : fixture::random_sets(rng)) {
    CAPTURE(s.label);
    auto rep = fixture::projection_properties(s, rng, 1000);
    CHECK(rep.worst_idempotence <= 1e-13);
    CHECK(rep.worst_firm <= 1e-12);
    CHECK(rep.worst_variational <= 1e-9);
  }
}

TEST_CASE("project_into tolerates aliasing") {
  Rng rng(25);
  for (const auto& s : fixture::random_sets(rng)) {
    CAPTURE(s.label);
    Vector w = oracle::gaussian(rng, s.dim);
    Vector want = sets::project(s.set, w);
    sets::project_into(s.set, w, w);
    CHECK((w - want).norm() <= 1e-15 * std::max(1.0, want.norm()));
  }
}

TEST_CASE("relaxed reflection examples") {
  auto plane = ConvexSet::hyperplane(vec({1.0, 0.0}), 0.0);
  CHECK((sets::relaxed_reflect(plane, sets::ReflectionParams::make(1.0), vec({2.0, 3.0})) - vec({-2.0, 3.0})).norm() <=
        1e-15);

  auto ball = ConvexSet::l2_ball(Vector::Zero(2), 1.0);
  CHECK((sets::relaxed_reflect(ball, sets::ReflectionParams::make(0.7), vec({2.0, 0.0})) - vec({0.6, 0.0})).norm() <=
        1e-15);

  Rng rng(26);
  for (const auto& s : fixture::random_sets(rng)) {
    CAPTURE(s.label);
    Vector w = oracle::gaussian(rng, s.dim);
    Vector half = sets::relaxed_reflect(s.set, sets::ReflectionParams::make(0.5), w);
    CHECK((half - sets::project(s.set, w)).norm() <= 1e-14 * std::max(1.0, w.norm()));
  }

  CHECK_THROWS_AS(sets::ReflectionParams::make(0.0), ParameterError);
  CHECK_THROWS_AS(sets::ReflectionParams::make(1.5), ParameterError);
}

TEST_CASE("relaxed reflections are nonexpansive") {
  Rng rng(27);
  for (const auto& s : fixture::random_sets(rng)) {
    CAPTURE(s.label);
    for (int trial = 0; trial < 200; ++trial) {
      const double theta = 0.05 + 0.95 * rng.uniform();
      Vector u = 3.0 * oracle::gaussian(rng, s.dim);
      Vector v = 3.0 * oracle::gaussian(rng, s.dim);
      Vector ru(u.size()), rv(v.size());
      sets::relaxed_reflect_into(s.set, theta, u, ru);
      sets::relaxed_reflect_into(s.set, theta, v, rv);
      CHECK((ru - rv).norm() <= (u - v).norm() * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("membership residual examples") {
  CHECK(sets::membership_residual(ConvexSet::hyperplane(vec({1.0, 0.0}), 1.0), vec({0.0, 0.0})) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sets::membership_residual(ConvexSet::l1_ball(1.0), vec({1.0, 1.0})) ==
        doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("set construction validates its inputs") {
  auto h = ConvexSet::hyperplane(vec({3.0, 4.0}), 10.0);
  CHECK(h.as<sets::Hyperplane>().normal.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h.as<sets::Hyperplane>().offset == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(h.kind() == sets::SetKind::Hyperplane);
  CHECK(h.dimension() == 2);
  CHECK_FALSE(ConvexSet::l1_ball(1.0).dimension().has_value());

  CHECK_THROWS_AS(ConvexSet::hyperplane(Vector::Zero(3), 1.0), InputError);
  CHECK_THROWS_AS(ConvexSet::l2_ball(Vector::Zero(2), 0.0), InputError);
  CHECK_THROWS_AS(ConvexSet::l1_ball(-1.0), InputError);
  CHECK_THROWS_AS(ConvexSet::canonical_subspace(2, 3), InputError);
  CHECK_THROWS_AS(ConvexSet::rotated_subspace(3, {0.1, 0.2}), InputError);
  CHECK_THROWS_AS(ConvexSet::rotated_subspace(4, {0.0, 0.2}), InputError);
  CHECK_THROWS_AS(ConvexSet::rotated_subspace(4, {0.1, 2.0}), InputError);
  CHECK_THROWS_AS(sets::project(ConvexSet::l2_ball(Vector::Zero(2), 1.0), Vector::Zero(3)), InputError);

  linalg::Matrix a(2, 3);
  a << 1, 0, 0, 0, 1, 0;
  CHECK_THROWS_AS(ConvexSet::affine_system(linalg::LinearMap::dense(a), Vector::Zero(3)), InputError);
  linalg::Matrix dup(2, 3);
  dup << 1, 1, 0, 1, 1, 0;
  CHECK_THROWS_AS(ConvexSet::affine_system(linalg::LinearMap::dense(dup), Vector::Zero(2)), RankDeficiencyError);
}

TEST_CASE("subspace projector matrices match span projectors") {
  std::vector<double> angles{0.3, 0.9, std::numbers::pi / 2};
  auto [px, py] = oracle::two_subspace_projectors(6, angles);
  auto x = ConvexSet::canonical_subspace(6, 3);
  auto y = ConvexSet::rotated_subspace(6, angles);
  CHECK((sets::projector_matrix(x.as<sets::CoordinateSubspace>()) - px).norm() <= 1e-14);
  CHECK((sets::projector_matrix(y.as<sets::CoordinateSubspace>()) - py).norm() <= 1e-14);
  Rng rng(28);
  Vector w = oracle::gaussian(rng, 6);
  CHECK((sets::project(y, w) - py * w).norm() <= 1e-14);
}
