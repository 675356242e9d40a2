#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>

#include <Eigen/Dense>

namespace gcarpa::linalg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Matrix2 = Eigen::Matrix2d;

bool all_finite(const Matrix& m);
bool all_finite(const Vector& v);

/// Cholesky factor of a symmetric positive-definite Gram matrix G = A*A^T.
///
/// Construction rejects G when any pivot (squared diagonal entry of the
/// factor) falls below 1e-12 * max_i G_ii. Immutable afterwards.
class GramFactorization {
 public:
  /// Factor G = A*A^T for a dense A (m x n, m <= n expected).
  static GramFactorization from_matrix(const Matrix& a);
  /// Factor an already assembled symmetric Gram matrix.
  static GramFactorization from_gram(const Matrix& gram);

  std::size_t dimension() const { return static_cast<std::size_t>(lower_.rows()); }
  const Matrix& lower_factor() const { return lower_; }

  /// Returns y with (A*A^T) y = rhs via forward and backward substitution.
  Vector solve(const Vector& rhs) const;
  void solve_in_place(Vector& rhs) const;

 private:
  explicit GramFactorization(Matrix lower) : lower_(std::move(lower)) {}
  Matrix lower_;
};

inline Vector solve_gram(const GramFactorization& fact, const Vector& rhs) {
  return fact.solve(rhs);
}

struct Eig2x2 {
  std::complex<double> lambda_plus;
  std::complex<double> lambda_minus;
  /// tr^2 - 4 det
  double discriminant = 0.0;
};

/// Eigenvalues of a real 2x2 block via the trace/determinant quadratic.
Eig2x2 eig_2x2(const Matrix2& m);

/// Orthonormal type-II DCT of fixed length and its transpose (DCT-III).
///
/// Thread-safe: plans are created once, execution uses the new-array
/// interface and touches no shared state.
class Dct {
 public:
  explicit Dct(std::size_t n);
  ~Dct();
  Dct(const Dct&) = delete;
  Dct& operator=(const Dct&) = delete;
  Dct(Dct&&) noexcept;
  Dct& operator=(Dct&&) noexcept;

  std::size_t size() const { return n_; }
  Vector forward(const Vector& x) const;
  Vector adjoint(const Vector& y) const;
  void forward_into(const Vector& x, Vector& out) const;
  void adjoint_into(const Vector& y, Vector& out) const;

 private:
  struct Plans;
  std::size_t n_;
  std::unique_ptr<Plans> plans_;
};

struct DctPair {
  std::function<Vector(const Vector&)> forward;
  std::function<Vector(const Vector&)> adjoint;
};

/// Function pair view of an orthonormal DCT-II of length n.
DctPair dct_pair(std::size_t n);

/// Linear map R^n -> R^m, either a dense matrix or an implicit
/// (apply, adjoint) pair. Copies share the underlying representation.
class LinearMap {
 public:
  using Apply = std::function<void(const Vector&, Vector&)>;

  static LinearMap dense(Matrix a);
  static LinearMap implicit(std::size_t rows, std::size_t cols, Apply apply, Apply adjoint);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_dense() const { return dense_ != nullptr; }
  const Matrix& matrix() const;

  Vector apply(const Vector& x) const;
  Vector adjoint(const Vector& y) const;
  void apply_into(const Vector& x, Vector& out) const;
  void adjoint_into(const Vector& y, Vector& out) const;

  /// Assembles A*A^T (column by column for implicit maps).
  Matrix gram() const;
  /// Materializes A (column by column for implicit maps).
  Matrix to_dense() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::shared_ptr<const Matrix> dense_;
  Apply apply_;
  Apply adjoint_;
};

}  // namespace gcarpa::linalg
