#pragma once

#include <Eigen/Core>

#include <stdexcept>

namespace prisma {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Bad arguments or malformed data: wrong shapes, nonpositive parameters,
/// out-of-range indices.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical breakdown: failed factorizations, non-finite iterates.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A smoothing sequence that increases somewhere. The convergence guarantee
/// requires a nonincreasing sequence.
class ScheduleViolationError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

/// Column-major copy of a matrix as a flat vector.
inline Vector flatten(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unflatten(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols)
    throw InvalidInputError("unflatten: vector size does not match shape");
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

}  // namespace prisma
