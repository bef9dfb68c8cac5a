#pragma once

#include "prisma/types.hpp"

namespace prisma::linalg {

/// Eigenpairs of a symmetric matrix, eigenvalues sorted descending,
/// eigenvectors as matching column-orthonormal columns.
struct EigenPairs {
  Vector values;
  Matrix vectors;
};

/// Thin SVD: m = u * s.asDiagonal() * v^T with r = min(rows, cols) triplets,
/// singular values nonnegative and descending.
struct ThinSvd {
  Matrix u;
  Vector s;
  Matrix v;
};

Matrix symmetrize(const Matrix& m);

/// True when max|M - M^T| <= tol * max(1, max|M|).
bool is_symmetric(const Matrix& m, double tol = 1e-10);

/// Full spectrum of a symmetric matrix. The input is symmetrized first;
/// iterates accumulate asymmetry at round-off level.
EigenPairs sym_eig(const Matrix& m);

/// The `count` algebraically largest eigenpairs, 1 <= count <= n.
EigenPairs partial_sym_eig(const Matrix& m, int count);

ThinSvd thin_svd(const Matrix& m);

/// Solves gram * z = rhs for symmetric positive definite gram (Cholesky).
Vector spd_solve(const Matrix& gram, const Vector& rhs);

}  // namespace prisma::linalg
