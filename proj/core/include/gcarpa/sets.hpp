#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "gcarpa/linalg.hpp"

namespace gcarpa::sets {

using linalg::Vector;

/// {x : A x = b} with A of full row rank. The Gram factor of A*A^T is
/// computed once at construction and shared between copies.
struct AffineSystem {
  linalg::LinearMap a;
  Vector b;
  std::shared_ptr<const linalg::GramFactorization> gram;
};

/// {x : a^T x = beta} with ||a|| = 1.
struct Hyperplane {
  Vector normal;
  double offset = 0.0;
};

struct L2Ball {
  Vector center;
  double radius = 1.0;
};

/// {x : ||x||_1 <= radius}, any dimension.
struct L1Ball {
  double radius = 1.0;
};

enum class BasisKind { Canonical, Rotated };

/// Canonical two-subspace construction in R^n:
///   Canonical: span{e_1, ..., e_p}
///   Rotated:   span{cos(phi_i) e_i + sin(phi_i) e_{p+i}}, i = 1..p
/// (0-based in code: e_i pairs with e_{p+i}).
struct CoordinateSubspace {
  std::size_t n = 0;
  std::size_t p = 0;
  BasisKind basis = BasisKind::Canonical;
  std::vector<double> cosines;  // Rotated only
  std::vector<double> sines;    // Rotated only
};

enum class SetKind { AffineSystem, Hyperplane, L2Ball, L1Ball, CoordinateSubspace };

std::string_view to_string(SetKind kind);

/// Projectable closed convex set. Immutable value type.
class ConvexSet {
 public:
  using Variant = std::variant<AffineSystem, Hyperplane, L2Ball, L1Ball, CoordinateSubspace>;

  static ConvexSet affine_system(linalg::LinearMap a, Vector b);
  static ConvexSet affine_system(linalg::LinearMap a, Vector b,
                                 std::shared_ptr<const linalg::GramFactorization> gram);
  /// Normalizes `a` to unit length and rescales `beta` accordingly.
  static ConvexSet hyperplane(const Vector& a, double beta);
  static ConvexSet l2_ball(Vector center, double radius);
  static ConvexSet l1_ball(double radius);
  static ConvexSet canonical_subspace(std::size_t n, std::size_t p);
  /// Each angle must lie in (0, pi/2]; requires n >= 2 * angles.size().
  static ConvexSet rotated_subspace(std::size_t n, const std::vector<double>& angles);

  SetKind kind() const { return static_cast<SetKind>(value_.index()); }
  /// Ambient dimension, or nullopt for dimension-free sets (L1Ball).
  std::optional<std::size_t> dimension() const;
  const Variant& value() const { return value_; }

  template <class T>
  const T& as() const { return std::get<T>(value_); }

 private:
  explicit ConvexSet(Variant v) : value_(std::move(v)) {}
  Variant value_;
};

struct ReflectionParams {
  double theta = 1.0;

  /// Throws ParameterError unless theta is in (0, 1].
  static ReflectionParams make(double theta);
};

/// Nearest point of `set` to w. `out` may alias `w`.
void project_into(const ConvexSet& set, const Vector& w, Vector& out);
Vector project(const ConvexSet& set, const Vector& w);

/// (1 - theta) w + theta (2 P w - w). `out` may alias `w`.
void relaxed_reflect_into(const ConvexSet& set, double theta, const Vector& w, Vector& out);
Vector relaxed_reflect(const ConvexSet& set, ReflectionParams rp, const Vector& w);

/// ||w - P w||.
double membership_residual(const ConvexSet& set, const Vector& w);

/// Euclidean projection onto {||x||_1 <= radius}; w is returned unchanged when
/// already inside.
void project_l1_ball(const Vector& w, double radius, Vector& out);

/// Soft-threshold level tau used by project_l1_ball (0 when w is inside).
double l1_threshold(const Vector& w, double radius);

/// Dense orthogonal projector of a CoordinateSubspace.
linalg::Matrix projector_matrix(const CoordinateSubspace& s);

}  // namespace gcarpa::sets
