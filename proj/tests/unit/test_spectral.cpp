#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gcarpa/errors.hpp"
#include "gcarpa/problems.hpp"
#include "gcarpa/spectral.hpp"
#include "oracles.hpp"

using namespace gcarpa;
using namespace gcarpa::spectral;
using operators::SolverParams;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double sin2(double deg) { return std::pow(std::sin(deg * kDeg), 2); }

}  // namespace

TEST_CASE("block matrix examples") {
  auto m0 = block_matrix(0.0, SolverParams::make(1.0, 0.3, 0.7, 0.8));
  CHECK(m0(0, 0) == 1.0);
  CHECK(m0(1, 0) == 0.0);

  for (double deg : {5.0, 30.0, 60.0, 89.0}) {
    auto e = block_eigs(sin2(deg), SolverParams::make(1.0, 0.0, 1.0, 1.0));
    CHECK(std::abs(std::abs(e.lambda_plus) - std::cos(deg * kDeg)) <= 1e-12);
    CHECK(std::abs(std::abs(e.lambda_minus) - std::cos(deg * kDeg)) <= 1e-12);
  }
}

TEST_CASE("block matrix matches the operator assembled on a 2-plane") {
  const SolverParams prm = SolverParams::make(1.0, 0.3, 0.7, 0.7);
  for (double deg : {45.0, 12.0, 77.0}) {
    auto lines = problems::make_two_lines(deg * kDeg);
    auto f = oracle::dense_operator(lines.projector_x(), lines.projector_y(), prm.mu, prm.gamma, prm.theta, prm.eta);
    CHECK((block_matrix(sin2(deg), prm) - f).norm() <= 1e-14);
  }
  const SolverParams relaxed = SolverParams::make(0.7, 0.4, 0.9, 0.6);
  auto lines = problems::make_two_lines(0.6);
  auto f = oracle::dense_operator(lines.projector_x(), lines.projector_y(), relaxed.mu, relaxed.gamma, relaxed.theta,
                                  relaxed.eta);
  CHECK((block_matrix(std::pow(std::sin(0.6), 2), relaxed) - f).norm() <= 1e-14);
}

TEST_CASE("closed-form eigenvalues agree with the QR oracle") {
  for (double eta : {0.5, 0.75, 1.0}) {
    for (double theta : {0.5, 0.8, 1.0}) {
      for (int i = 0; i < 50; ++i) {
        for (int j = 0; j < 50; ++j) {
          const double t = i / 49.0;
          const double g = 0.99 * j / 49.0;
          const SolverParams prm = SolverParams::make(1.0, g, theta, eta);
          auto e = block_eigs(t, prm);
          auto [o1, o2] = oracle::qr_eigs_2x2(e.block);
          const double err = std::min(std::abs(e.lambda_plus - o1) + std::abs(e.lambda_minus - o2),
                                      std::abs(e.lambda_plus - o2) + std::abs(e.lambda_minus - o1));
          CHECK(err <= 2e-12);
          const double vertex =
              4.0 * std::pow(prm.gamma + (1 - prm.gamma) * eta, 2) * theta * theta * std::pow(t - e.tau, 2) + e.delta_min;
          CHECK(std::abs(e.discriminant - vertex) <= 1e-12);
          CHECK(std::abs(e.spectral_radius() - block_radius(t, prm)) <= 1e-14);
        }
      }
    }
  }
}

TEST_CASE("discriminant vertex quantities") {
  auto e = block_eigs(0.3, SolverParams::make(1.0, 0.4, 1.0, 1.0));
  CHECK(e.delta_min == doctest::Approx(-(1 - 0.16)).epsilon(1e-14));
  for (double t : {0.1, 0.25, 0.4, 0.9}) {
    const double c = std::sqrt(1 - t), s = std::sqrt(t);
    auto crit = block_eigs(t, SolverParams::make(1.0, 2 * s * c, 1.0, 1.0));
    CHECK(std::abs(crit.discriminant) <= 1e-12);
    CHECK(std::abs(crit.lambda_plus - (c * c - c * s)) <= 1e-7);
  }
}

TEST_CASE("scalar eigenvalues") {
  auto a = scalar_eigs(SolverParams::make(1.0, 0.0, 1.0, 1.0));
  CHECK(a.lambda_q_minus_p == 0.0);
  CHECK(a.lambda_n_minus_p_minus_q == doctest::Approx(1.0));
  auto b = scalar_eigs(SolverParams::make(0.5, 0.0, 0.5, 0.5));
  CHECK(b.lambda_n_minus_p_minus_q == doctest::Approx(0.75));
}

TEST_CASE("subdominant modulus on the standard schedules") {
  auto s5 = PrincipalAngleSpec::schedule(50, 5 * kDeg);
  CHECK(std::abs(std::pow(std::cos(s5.angles.front()), 2) - 0.9924) <= 1e-4);
  auto s10 = PrincipalAngleSpec::schedule(50, 10 * kDeg);
  CHECK(std::abs(subdominant_modulus(s10, SolverParams::make(1.0, 0.0, 1.0, 1.0)) - 0.9848) <= 1e-4);
  auto s15 = PrincipalAngleSpec::schedule(50, 15 * kDeg);
  auto t15 = s15.t_values();
  auto mm = minimax_gamma(t15.front(), t15.back(), 0.7, 0.7);
  CHECK(std::abs(subdominant_modulus(s15, SolverParams::make(1.0, mm.gamma, 0.7, 0.7)) - 0.9062) <= 1e-3);
}

TEST_CASE("subdominant modulus honors scalar multiplicities") {
  PrincipalAngleSpec spec{5, 2, 2, {0.3, 0.8}};
  const SolverParams dr = SolverParams::make(1.0, 0.0, 1.0, 1.0);
  // n - p - q = 1 free direction with eigenvalue 1 under DR
  CHECK(subdominant_modulus(spec, dr) == doctest::Approx(1.0));
  PrincipalAngleSpec tight{4, 2, 2, {0.3, 0.8}};
  CHECK(subdominant_modulus(tight, dr) == doctest::Approx(std::cos(0.3)).epsilon(1e-14));
  PrincipalAngleSpec unequal{5, 2, 3, {0.3, 0.8}};
  const SolverParams carpa = SolverParams::make(1.0, 0.5, 0.9, 1.0);
  const double expect = std::max(block_radius(std::pow(std::sin(0.3), 2), carpa),
                                 std::abs(scalar_eigs(carpa).lambda_q_minus_p));
  CHECK(subdominant_modulus(unequal, carpa) == doctest::Approx(std::max(expect, block_radius(std::pow(std::sin(0.8), 2), carpa))));
}

TEST_CASE("critical damping") {
  for (double t : {0.05, 0.3, 0.45, 0.8}) {
    auto cg = critical_gamma(t, 1.0, 1.0);
    REQUIRE(cg.admissible.size() == 1);
    CHECK(std::abs(cg.admissible[0].gamma - 2 * std::sqrt(t * (1 - t))) <= 1e-12);
    CHECK(std::abs(cg.admissible[0].lambda_star - ((1 - t) - std::sqrt(t * (1 - t)))) <= 1e-12);
  }
  auto one = critical_gamma(1.0, 1.0, 1.0);
  REQUIRE(one.admissible.size() == 1);
  CHECK(one.admissible[0].gamma == doctest::Approx(0.0));
  CHECK(std::abs(one.admissible[0].lambda_star) <= 1e-15);

  auto half = critical_gamma(0.5, 0.7, 0.7);
  CHECK_FALSE(half.admissible.empty());
  for (const auto& c : half.admissible) {
    auto e = block_eigs(0.5, SolverParams::make(1.0, c.gamma, 0.7, 0.7));
    CHECK(std::abs(e.discriminant) <= 1e-10);
    CHECK(std::abs(e.lambda_plus.real() - c.lambda_star) <= 1e-6);
  }

  CHECK_THROWS_AS(critical_gamma(0.5, 0.4, 0.7), ParameterError);
  CHECK_THROWS_AS(critical_gamma(0.0, 0.7, 0.7), InputError);
}

TEST_CASE("discriminant vanishes at every admissible critical gamma") {
  Rng rng(51);
  for (int trial = 0; trial < 2000; ++trial) {
    const double t = 0.001 + 0.998 * rng.uniform();
    const double theta = 0.5 + 0.5 * rng.uniform();
    const double eta = 0.5 + 0.5 * rng.uniform();
    for (const auto& c : critical_gamma(t, theta, eta).admissible) {
      CHECK(std::abs(discriminant_expanded(t, SolverParams::make(1.0, c.gamma, theta, eta))) <= 1e-10);
    }
  }
}

TEST_CASE("minimax gamma") {
  auto s5 = PrincipalAngleSpec::schedule(50, 5 * kDeg).t_values();
  CHECK(std::abs(minimax_gamma(s5.front(), s5.back(), 1.0, 1.0).xi - 0.9056) <= 1e-3);
  auto s20 = PrincipalAngleSpec::schedule(50, 20 * kDeg).t_values();
  CHECK(std::abs(minimax_gamma(s20.front(), s20.back(), 0.7, 0.7).xi - 0.8362) <= 1e-3);
  CHECK(std::abs(minimax_gamma(s20.front(), s20.back(), 1.0, 1.0).xi - 0.5967) <= 1e-3);

  const double t = 0.3;
  auto single = minimax_gamma(t, t, 1.0, 1.0);
  CHECK(std::abs(single.xi - std::abs((1 - t) - std::sqrt(t * (1 - t)))) <= 1e-9);
  CHECK(single.source == MinimaxSource::Candidate);

  auto res = minimax_gamma(s20.front(), s20.back(), 0.8, 0.9);
  CHECK(res.xi == doctest::Approx(endpoint_objective(s20.front(), s20.back(), res.gamma, 0.8, 0.9)));
  for (int i = 0; i <= 200; ++i) {
    const double g = (1 - 1e-6) * i / 200.0;
    CHECK(res.xi <= endpoint_objective(s20.front(), s20.back(), g, 0.8, 0.9) + 1e-12);
  }
  CHECK_THROWS_AS(minimax_gamma(0.1, 1.0, 1.0, 1.0, 0.8), UnsupportedRegimeError);
}

TEST_CASE("grid search") {
  auto spec = PrincipalAngleSpec::schedule(50, 10 * kDeg);
  auto one = grid_best(spec, {0.8}, {0.9}, {0.35});
  CHECK(one.xi == subdominant_modulus(spec, SolverParams::make(1.0, 0.35, 0.8, 0.9)));

  // At t = 1 the block radius is max(|1 - kappa|, |1 - (1 + g) theta|); with
  // g = 0.5 and theta = 0.7 both eta = 0.9 and eta = 1 reach 0.05.
  PrincipalAngleSpec ortho{2, 1, 1, {std::numbers::pi / 2}};
  auto tie = grid_best(ortho, {0.6, 0.7}, {0.8, 0.9, 1.0}, {0.5});
  CHECK(tie.theta == 0.7);
  CHECK(tie.eta == 0.9);
  CHECK(tie.xi == doctest::Approx(0.05).epsilon(1e-12));

  CHECK_THROWS(grid_best(spec, {}, {1.0}, {0.5}));
  CHECK(default_gamma_grid().size() == 20);
  CHECK(default_theta_grid().size() == 6);
}

TEST_CASE("endpoint-worst property") {
  auto spec = PrincipalAngleSpec::schedule(50, 7 * kDeg);
  CHECK(endpoint_worst_check(spec, SolverParams::make(1.0, 0.5, 1.0, 1.0)).holds);
  CHECK(endpoint_worst_check(spec, SolverParams::make(1.0, 0.5, 0.5, 0.5)).holds);
  PrincipalAngleSpec single{2, 1, 1, {0.4}};
  CHECK(endpoint_worst_check(single, SolverParams::make(1.0, 0.2, 0.6, 0.9)).holds);
  for (double deg : {3.0, 10.0, 25.0, 40.0, 70.0})
    for (double theta : {0.5, 0.6, 0.8, 1.0})
      for (double eta : {0.5, 0.7, 0.9, 1.0})
        for (double g : {0.0, 0.25, 0.5, 0.9}) {
          auto r = endpoint_worst_check(PrincipalAngleSpec::schedule(50, deg * kDeg),
                                        SolverParams::make(1.0, g, theta, eta));
          CHECK(r.holds);
        }
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS((PrincipalAngleSpec{4, 2, 2, {0.5, 0.3}}.validate()), InputError);
  CHECK_THROWS_AS((PrincipalAngleSpec{4, 2, 2, {0.0, 0.3}}.validate()), InputError);
  CHECK_THROWS_AS((PrincipalAngleSpec{3, 2, 2, {0.2, 0.3}}.validate()), InputError);
  auto s = angle_schedule(3, std::numbers::pi / 6);
  CHECK(s[1] == doctest::Approx(std::numbers::pi / 3));
  CHECK(s[2] == std::numbers::pi / 2);
}
