#include <benchmark/benchmark.h>

#include <cstddef>

#include "gcarpa/operators.hpp"
#include "gcarpa/problems.hpp"
#include "gcarpa/rng.hpp"
#include "gcarpa/sets.hpp"
#include "gcarpa/spectral.hpp"

using gcarpa::Rng;
using gcarpa::linalg::Vector;

namespace {

Vector gaussian(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Vector v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = rng.normal();
  return v;
}

void BM_L1Projection(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Vector w = gaussian(n, 7);
  Vector out(w.size());
  for (auto _ : state) {
    gcarpa::sets::project_l1_ball(w, 0.1 * static_cast<double>(n), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_L1Projection)->RangeMultiplier(4)->Range(64, 65536)->Complexity();

void BM_CsStep(benchmark::State& state) {
  const auto setting = static_cast<gcarpa::problems::CsSetting>(state.range(0));
  const auto inst = gcarpa::problems::make_cs_instance(setting, 1);
  gcarpa::operators::GcarpaStepper stepper(inst.set_x, inst.set_y, gcarpa::operators::SolverParams{});
  stepper.reset(gaussian(inst.info.n, 3));
  for (auto _ : state) {
    stepper.advance();
    benchmark::DoNotOptimize(stepper.z().data());
  }
  state.SetLabel(std::string(gcarpa::problems::to_string(setting)));
}
BENCHMARK(BM_CsStep)
    ->Arg(static_cast<int>(gcarpa::problems::CsSetting::P1))
    ->Arg(static_cast<int>(gcarpa::problems::CsSetting::P2))
    ->Arg(static_cast<int>(gcarpa::problems::CsSetting::P3))
    ->Arg(static_cast<int>(gcarpa::problems::CsSetting::P4));

void BM_GridBest(benchmark::State& state) {
  const auto spec = gcarpa::spectral::PrincipalAngleSpec::schedule(50, 0.35);
  const auto thetas = gcarpa::spectral::default_theta_grid();
  const auto gammas = gcarpa::spectral::default_gamma_grid();
  for (auto _ : state) {
    auto gb = gcarpa::spectral::grid_best(spec, thetas, thetas, gammas);
    benchmark::DoNotOptimize(gb);
  }
}
BENCHMARK(BM_GridBest)->Unit(benchmark::kMillisecond);

void BM_MinimaxGamma(benchmark::State& state) {
  for (auto _ : state) {
    auto r = gcarpa::spectral::minimax_gamma(0.03, 1.0, 0.8, 0.9);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_MinimaxGamma);

}  // namespace

BENCHMARK_MAIN();
