#include <cmath>
#include <complex>

#include "doctest.h"
#include "gcarpa/errors.hpp"
#include "gcarpa/linalg.hpp"
#include "gcarpa/rng.hpp"
#include "oracles.hpp"

using namespace gcarpa;
using linalg::Matrix;
using linalg::Matrix2;
using linalg::Vector;

TEST_CASE("solve_gram on small systems") {
  SUBCASE("identity") {
    auto f = linalg::GramFactorization::from_gram(Matrix::Identity(2, 2));
    Vector rhs(2);
    rhs << 3.0, 4.0;
    Vector x = linalg::solve_gram(f, rhs);
    CHECK(std::abs(x(0) - 3.0) <= 1e-15);
    CHECK(std::abs(x(1) - 4.0) <= 1e-15);
  }
  SUBCASE("scaled identity") {
    auto f = linalg::GramFactorization::from_matrix(2.0 * Matrix::Identity(2, 2));
    Vector rhs(2);
    rhs << 4.0, 8.0;
    Vector x = f.solve(rhs);
    CHECK(std::abs(x(0) - 1.0) <= 1e-15);
    CHECK(std::abs(x(1) - 2.0) <= 1e-15);
  }
}

TEST_CASE("solve_gram agrees with dense LU on random full-rank A") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = oracle::gaussian(rng, 5, 12);
    Vector rhs = oracle::gaussian(rng, 5);
    auto f = linalg::GramFactorization::from_matrix(a);
    Vector got = f.solve(rhs);
    Vector want = oracle::lu_solve(a * a.transpose(), rhs);
    CHECK((got - want).norm() / want.norm() <= 1e-10);
  }
}

TEST_CASE("Cholesky factor reconstructs the Gram matrix") {
  Rng rng(12);
  Matrix a = oracle::gaussian(rng, 8, 20);
  auto f = linalg::GramFactorization::from_matrix(a);
  const Matrix& l = f.lower_factor();
  Matrix g = a * a.transpose();
  CHECK((l * l.transpose() - g).norm() / g.norm() <= 1e-10);
  CHECK(f.dimension() == 8);
}

TEST_CASE("gram factorization rejects bad input") {
  Matrix a(2, 3);
  a << 1, 2, 3, 2, 4, 6;
  CHECK_THROWS_AS(linalg::GramFactorization::from_matrix(a), RankDeficiencyError);
  auto f = linalg::GramFactorization::from_gram(Matrix::Identity(3, 3));
  CHECK_THROWS_AS(f.solve(Vector::Zero(2)), InputError);
  CHECK_THROWS_AS(linalg::GramFactorization::from_gram(Matrix::Identity(2, 3)), InputError);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(linalg::GramFactorization::from_gram(bad), InputError);
}

TEST_CASE("eig_2x2 examples") {
  auto id = linalg::eig_2x2(Matrix2::Identity());
  CHECK(std::abs(id.lambda_plus - 1.0) <= 1e-15);
  CHECK(std::abs(id.lambda_minus - 1.0) <= 1e-15);
  CHECK(id.discriminant == 0.0);

  Matrix2 rot;
  rot << 0, -1, 1, 0;
  auto r = linalg::eig_2x2(rot);
  CHECK(std::abs(r.lambda_plus - std::complex<double>(0, 1)) <= 1e-15);
  CHECK(std::abs(r.lambda_minus - std::complex<double>(0, -1)) <= 1e-15);
  CHECK(r.discriminant == doctest::Approx(-4.0));

  Matrix2 bad = Matrix2::Identity();
  bad(0, 1) = INFINITY;
  CHECK_THROWS_AS(linalg::eig_2x2(bad), InputError);
}

TEST_CASE("eig_2x2 matches the QR-iteration oracle") {
  Rng rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    Matrix2 m;
    m << oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1),
        oracle::uniform(rng, -1, 1);
    auto got = linalg::eig_2x2(m);
    auto [o1, o2] = oracle::qr_eigs_2x2(m);
    const double direct = std::abs(got.lambda_plus - o1) + std::abs(got.lambda_minus - o2);
    const double swapped = std::abs(got.lambda_plus - o2) + std::abs(got.lambda_minus - o1);
    CHECK(std::min(direct, swapped) <= 1e-12);
  }
}

TEST_CASE("eig_2x2 preserves trace and determinant") {
  Rng rng(14);
  for (int trial = 0; trial < 10000; ++trial) {
    Matrix2 m;
    m << oracle::uniform(rng, -2, 2), oracle::uniform(rng, -2, 2), oracle::uniform(rng, -2, 2),
        oracle::uniform(rng, -2, 2);
    auto e = linalg::eig_2x2(m);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    CHECK(std::abs(e.lambda_plus + e.lambda_minus - m.trace()) <= 1e-12 * scale);
    CHECK(std::abs(e.lambda_plus * e.lambda_minus - m.determinant()) <= 1e-12 * scale * scale);
  }
}

TEST_CASE("DCT round trips and norms") {
  SUBCASE("length one") {
    linalg::Dct d(1);
    Vector x = Vector::Constant(1, 5.0);
    CHECK(std::abs(d.forward(x)(0) - 5.0) <= 1e-15);
    CHECK(std::abs(d.adjoint(d.forward(x))(0) - 5.0) <= 1e-15);
  }
  SUBCASE("random length 64") {
    Rng rng(15);
    linalg::Dct d(64);
    Vector x = oracle::gaussian(rng, 64);
    CHECK((d.adjoint(d.forward(x)) - x).norm() <= 1e-12 * x.norm());
    CHECK(std::abs(d.forward(x).norm() - x.norm()) <= 1e-12 * x.norm());
  }
  SUBCASE("zero length") { CHECK_THROWS_AS(linalg::Dct(0), InputError); }
  SUBCASE("length mismatch") {
    linalg::Dct d(4);
    CHECK_THROWS_AS(d.forward(Vector::Zero(5)), InputError);
  }
}

TEST_CASE("DCT matches the dense cosine matrix") {
  Rng rng(16);
  for (std::size_t n : {2u, 4u, 7u, 16u, 33u}) {
    CAPTURE(n);
    linalg::Dct d(n);
    Matrix c = oracle::dct_matrix(n);
    Vector x = oracle::gaussian(rng, n);
    CHECK((d.forward(x) - c * x).norm() <= 1e-12 * x.norm());
    CHECK((d.adjoint(x) - c.transpose() * x).norm() <= 1e-12 * x.norm());
  }
  auto pair = linalg::dct_pair(4);
  Vector e0 = Vector::Unit(4, 0);
  CHECK((pair.forward(e0) - oracle::dct_matrix(4).col(0)).norm() <= 1e-14);
}

TEST_CASE("LinearMap implicit and dense forms agree") {
  Rng rng(17);
  Matrix a = oracle::gaussian(rng, 3, 7);
  auto dense = linalg::LinearMap::dense(a);
  auto implicit = linalg::LinearMap::implicit(
      3, 7, [a](const Vector& x, Vector& out) { out = a * x; },
      [a](const Vector& y, Vector& out) { out = a.transpose() * y; });
  Vector x = oracle::gaussian(rng, 7);
  Vector y = oracle::gaussian(rng, 3);
  CHECK((dense.apply(x) - implicit.apply(x)).norm() <= 1e-14);
  CHECK((dense.adjoint(y) - implicit.adjoint(y)).norm() <= 1e-14);
  CHECK((implicit.to_dense() - a).norm() <= 1e-14);
  CHECK((implicit.gram() - a * a.transpose()).norm() <= 1e-12);
  CHECK(dense.is_dense());
  CHECK_FALSE(implicit.is_dense());
  CHECK_THROWS_AS(implicit.matrix(), InputError);
  CHECK_THROWS_AS(dense.apply(Vector::Zero(3)), InputError);
}

TEST_CASE("Rng streams are reproducible") {
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c = Rng::derive(5, 3), d = Rng::derive(5, 3), e = Rng::derive(5, 4);
  const double cu = c.uniform();
  CHECK(cu == d.uniform());
  CHECK(cu != e.uniform());
  Rng s(1);
  auto idx = s.sample_without_replacement(10, 10);
  std::sort(idx.begin(), idx.end());
  for (std::size_t i = 0; i < 10; ++i) CHECK(idx[i] == i);
}
