#pragma once

#include <stdexcept>
#include <string>

namespace gcarpa {

/// Bad shapes, non-finite entries, or arguments outside an operation's domain.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Solver or schedule parameters outside their validity intervals.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Gram matrix A*A^T is (numerically) singular.
class RankDeficiencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterate became non-finite or exceeded the divergence guard. Unreachable
/// for valid parameters; seeing it means a bug.
class NumericDivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problem regime that the library does not model (e.g. n != 2p for the
/// canonical subspace construction).
class UnsupportedRegimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace gcarpa
