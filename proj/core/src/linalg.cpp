#include "gcarpa/linalg.hpp"

#include <cmath>
#include <mutex>
#include <string>

#include <fftw3.h>

#include "gcarpa/errors.hpp"

namespace gcarpa::linalg {

bool all_finite(const Matrix& m) { return m.allFinite(); }
bool all_finite(const Vector& v) { return v.allFinite(); }

GramFactorization GramFactorization::from_matrix(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) throw InputError("gram: empty matrix");
  if (!a.allFinite()) throw InputError("gram: non-finite entries");
  Matrix g = Matrix::Zero(a.rows(), a.rows());
  g.selfadjointView<Eigen::Lower>().rankUpdate(a);
  g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
  return from_gram(g);
}

GramFactorization GramFactorization::from_gram(const Matrix& gram) {
  if (gram.rows() == 0 || gram.rows() != gram.cols()) {
    throw InputError("gram: expected a non-empty square matrix");
  }
  if (!gram.allFinite()) throw InputError("gram: non-finite entries");
  const double max_diag = gram.diagonal().maxCoeff();
  if (!(max_diag > 0.0)) throw RankDeficiencyError("gram: non-positive diagonal");

  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw RankDeficiencyError("gram: matrix is not positive definite (A lacks full row rank)");
  }
  Matrix lower = llt.matrixL();
  const double floor = 1e-12 * max_diag;
  for (Eigen::Index i = 0; i < lower.rows(); ++i) {
    const double pivot = lower(i, i) * lower(i, i);
    if (!(pivot >= floor)) {
      throw RankDeficiencyError("gram: Cholesky pivot " + std::to_string(i) +
                                " below 1e-12 * max diagonal");
    }
  }
  return GramFactorization(std::move(lower));
}

Vector GramFactorization::solve(const Vector& rhs) const {
  Vector y = rhs;
  solve_in_place(y);
  return y;
}

void GramFactorization::solve_in_place(Vector& rhs) const {
  if (static_cast<std::size_t>(rhs.size()) != dimension()) {
    throw InputError("solve_gram: rhs has length " + std::to_string(rhs.size()) +
                     ", expected " + std::to_string(dimension()));
  }
  lower_.triangularView<Eigen::Lower>().solveInPlace(rhs);
  lower_.transpose().triangularView<Eigen::Upper>().solveInPlace(rhs);
}

Eig2x2 eig_2x2(const Matrix2& m) {
  if (!m.allFinite()) throw InputError("eig_2x2: non-finite entry");
  const double tr = m.trace();
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const double disc = tr * tr - 4.0 * det;
  Eig2x2 out;
  out.discriminant = disc;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    out.lambda_plus = {0.5 * (tr + r), 0.0};
    out.lambda_minus = {0.5 * (tr - r), 0.0};
  } else {
    const double r = std::sqrt(-disc);
    out.lambda_plus = {0.5 * tr, 0.5 * r};
    out.lambda_minus = {0.5 * tr, -0.5 * r};
  }
  return out;
}

// ---------------------------------------------------------------------------
// DCT

namespace {
// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Dct::Plans {
  fftw_plan forward = nullptr;  // REDFT10
  fftw_plan inverse = nullptr;  // REDFT01
  double scale0 = 0.0;          // sqrt(1/n)
  double scalek = 0.0;          // sqrt(2/n)

  ~Plans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
  }
};

Dct::Dct(std::size_t n) : n_(n) {
  if (n == 0) throw InputError("dct: length must be at least 1");
  plans_ = std::make_unique<Plans>();
  plans_->scale0 = std::sqrt(1.0 / static_cast<double>(n));
  plans_->scalek = std::sqrt(2.0 / static_cast<double>(n));

  std::lock_guard<std::mutex> lock(planner_mutex());
  const int len = static_cast<int>(n);
  double* in = fftw_alloc_real(n);
  double* out = fftw_alloc_real(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_->forward = fftw_plan_r2r_1d(len, in, out, FFTW_REDFT10, flags);
  plans_->inverse = fftw_plan_r2r_1d(len, in, out, FFTW_REDFT01, flags);
  fftw_free(in);
  fftw_free(out);
}

Dct::~Dct() = default;
Dct::Dct(Dct&&) noexcept = default;
Dct& Dct::operator=(Dct&&) noexcept = default;

void Dct::forward_into(const Vector& x, Vector& out) const {
  if (static_cast<std::size_t>(x.size()) != n_) throw InputError("dct: length mismatch");
  out.resize(static_cast<Eigen::Index>(n_));
  // Out-of-place r2r plans preserve their input.
  fftw_execute_r2r(plans_->forward, const_cast<double*>(x.data()), out.data());
  // REDFT10 yields 2 * sum x_j cos(pi (j + 1/2) k / n).
  out[0] *= 0.5 * plans_->scale0;
  out.tail(static_cast<Eigen::Index>(n_) - 1) *= 0.5 * plans_->scalek;
}

void Dct::adjoint_into(const Vector& y, Vector& out) const {
  if (static_cast<std::size_t>(y.size()) != n_) throw InputError("dct: length mismatch");
  Vector scaled = y;
  scaled[0] *= plans_->scale0;
  scaled.tail(static_cast<Eigen::Index>(n_) - 1) *= 0.5 * plans_->scalek;
  out.resize(static_cast<Eigen::Index>(n_));
  // REDFT01 yields X_0 + 2 * sum_{k>=1} X_k cos(pi (j + 1/2) k / n).
  fftw_execute_r2r(plans_->inverse, scaled.data(), out.data());
}

Vector Dct::forward(const Vector& x) const {
  Vector out;
  forward_into(x, out);
  return out;
}

Vector Dct::adjoint(const Vector& y) const {
  Vector out;
  adjoint_into(y, out);
  return out;
}

DctPair dct_pair(std::size_t n) {
  auto dct = std::make_shared<const Dct>(n);
  return DctPair{[dct](const Vector& x) { return dct->forward(x); },
                 [dct](const Vector& y) { return dct->adjoint(y); }};
}

// ---------------------------------------------------------------------------
// LinearMap

LinearMap LinearMap::dense(Matrix a) {
  if (!a.allFinite()) throw InputError("linear map: non-finite entries");
  LinearMap map;
  map.rows_ = static_cast<std::size_t>(a.rows());
  map.cols_ = static_cast<std::size_t>(a.cols());
  map.dense_ = std::make_shared<const Matrix>(std::move(a));
  return map;
}

LinearMap LinearMap::implicit(std::size_t rows, std::size_t cols, Apply apply, Apply adjoint) {
  if (!apply || !adjoint) throw InputError("linear map: apply and adjoint are required");
  LinearMap map;
  map.rows_ = rows;
  map.cols_ = cols;
  map.apply_ = std::move(apply);
  map.adjoint_ = std::move(adjoint);
  return map;
}

const Matrix& LinearMap::matrix() const {
  if (!dense_) throw InputError("linear map: not stored densely");
  return *dense_;
}

void LinearMap::apply_into(const Vector& x, Vector& out) const {
  if (static_cast<std::size_t>(x.size()) != cols_) throw InputError("linear map: input length mismatch");
  if (dense_) {
    out.noalias() = (*dense_) * x;
  } else {
    apply_(x, out);
  }
}

void LinearMap::adjoint_into(const Vector& y, Vector& out) const {
  if (static_cast<std::size_t>(y.size()) != rows_) throw InputError("linear map: input length mismatch");
  if (dense_) {
    out.noalias() = dense_->transpose() * y;
  } else {
    adjoint_(y, out);
  }
}

Vector LinearMap::apply(const Vector& x) const {
  Vector out;
  apply_into(x, out);
  return out;
}

Vector LinearMap::adjoint(const Vector& y) const {
  Vector out;
  adjoint_into(y, out);
  return out;
}

Matrix LinearMap::gram() const {
  if (dense_) {
    Matrix g = Matrix::Zero(dense_->rows(), dense_->rows());
    g.selfadjointView<Eigen::Lower>().rankUpdate(*dense_);
    g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
    return g;
  }
  const auto m = static_cast<Eigen::Index>(rows_);
  Matrix g(m, m);
  Vector e = Vector::Zero(m);
  Vector col;
  Vector img;
  for (Eigen::Index j = 0; j < m; ++j) {
    e[j] = 1.0;
    adjoint_(e, col);
    apply_(col, img);
    g.col(j) = img;
    e[j] = 0.0;
  }
  // Symmetrize away round-off from the implicit transforms.
  return 0.5 * (g + g.transpose());
}

Matrix LinearMap::to_dense() const {
  if (dense_) return *dense_;
  const auto n = static_cast<Eigen::Index>(cols_);
  Matrix a(static_cast<Eigen::Index>(rows_), n);
  Vector e = Vector::Zero(n);
  Vector col;
  for (Eigen::Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    apply_(e, col);
    a.col(j) = col;
    e[j] = 0.0;
  }
  return a;
}

}  // namespace gcarpa::linalg
