#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "gcarpa/linalg.hpp"
#include "gcarpa/rng.hpp"
#include "gcarpa/sets.hpp"
#include "gcarpa/spectral.hpp"

namespace gcarpa::problems {

using linalg::Matrix;
using linalg::Vector;
using sets::ConvexSet;

struct SubspaceInstance {
  std::size_t n = 0;
  std::size_t p = 0;
  spectral::PrincipalAngleSpec angles;
  ConvexSet set_x;
  ConvexSet set_y;
  /// X cap Y = {0} for this construction.
  Matrix intersection_projector;

  Matrix projector_x() const;
  Matrix projector_y() const;
};

/// X = span{e_i}, Y = span{cos(phi_i) e_i + sin(phi_i) e_{p+i}} with the
/// evenly spaced schedule from phiF to pi/2. Requires n = 2p.
SubspaceInstance make_subspace_instance(std::size_t n, std::size_t p, double phi_f);

/// Two lines through the origin of R^2 at angle phi.
SubspaceInstance make_two_lines(double phi);

/// Unit-norm Gaussian starting points.
std::vector<Vector> unit_gaussian_starts(std::size_t dim, std::size_t count, std::uint64_t seed);

struct BallLineInstance {
  ConvexSet ball;
  ConvexSet line;
  Vector normal;
  Vector solution;

  /// solution + 10 u with u a normalized 2-D Gaussian draw.
  Vector start(Rng& rng) const;
  /// Start i of a sweep, from the derived stream (seed, i).
  Vector start(std::uint64_t seed, std::size_t index) const;
};

/// Unit ball at the origin and the tangent line a^T x = 1, a = (1,1)/sqrt 2.
BallLineInstance make_ball_line_instance();

enum class CsSetting { Toy, P1, P2, P3, P4 };
enum class Dictionary { Identity, Dct };
enum class Measurement { Gaussian, Dirac, Restriction };

struct CsSettingInfo {
  CsSetting setting;
  std::size_t m;
  std::size_t n;
  std::size_t kappa;
  Dictionary dictionary;
  Measurement measurement;
};

CsSettingInfo setting_info(CsSetting s);
std::string_view to_string(CsSetting s);
/// "toy", "p1", ..., "p4" (case-insensitive); throws InputError otherwise.
CsSetting parse_cs_setting(std::string_view name);

/// X = {x : A x = b}, Y = {x : ||x||_1 <= c} with a planted kappa-sparse
/// solution. Gaussian settings use a dense A with N(0, 1/m) entries; DCT
/// settings use A = R C (C the orthonormal DCT-II, R a random row selection)
/// applied through fast transforms.
struct CsInstance {
  CsSettingInfo info;
  std::uint64_t seed = 0;
  linalg::LinearMap sensing;
  Vector b;
  double radius = 0.0;
  Vector ground_truth;
  /// Selected DCT rows, sorted (DCT settings only).
  std::vector<std::size_t> rows;
  ConvexSet set_x;
  ConvexSet set_y;
};

/// Draw order: measurement rows (or matrix entries, row-major), then the
/// support, then the nonzero values, all from Rng(seed).
CsInstance make_cs_instance(CsSetting setting, std::uint64_t seed);

}  // namespace gcarpa::problems
