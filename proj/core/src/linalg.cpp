#include "prisma/linalg.hpp"

#include <lapacke.h>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <string>

namespace prisma::linalg {

namespace {

void check_finite(const Matrix& m, const char* op) {
  if (!m.allFinite())
    throw InvalidInputError(std::string(op) + ": non-finite entries");
}

void check_square(const Matrix& m, const char* op) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw InvalidInputError(std::string(op) + ": matrix must be square and nonempty");
}

void check_symmetric(const Matrix& m, const char* op) {
  if (!is_symmetric(m))
    throw InvalidInputError(std::string(op) + ": matrix is not symmetric");
}

}  // namespace

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

bool is_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

EigenPairs sym_eig(const Matrix& m) {
  check_finite(m, "sym_eig");
  check_square(m, "sym_eig");
  check_symmetric(m, "sym_eig");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrize(m));
  if (solver.info() != Eigen::Success)
    throw NumericalError("sym_eig: eigendecomposition did not converge");
  // Eigen returns ascending order.
  EigenPairs out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

EigenPairs partial_sym_eig(const Matrix& m, int count) {
  check_finite(m, "partial_sym_eig");
  check_square(m, "partial_sym_eig");
  check_symmetric(m, "partial_sym_eig");
  const auto n = static_cast<lapack_int>(m.rows());
  if (count < 1 || count > n)
    throw InvalidInputError("partial_sym_eig: count out of range [1, n]");

  Matrix a = symmetrize(m);  // dsyevr destroys its input
  Vector values(n);
  Matrix vectors(n, count);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(count));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, 'V', 'I', 'U', n, a.data(), n,
      /*vl=*/0.0, /*vu=*/0.0, /*il=*/n - count + 1, /*iu=*/n,
      /*abstol=*/0.0, &found, values.data(), vectors.data(), n, isuppz.data());
  if (info != 0)
    throw NumericalError("partial_sym_eig: dsyevr failed, info=" + std::to_string(info));
  if (found != count)
    throw NumericalError("partial_sym_eig: dsyevr returned " + std::to_string(found) +
                         " of " + std::to_string(count) + " requested eigenpairs");
  // dsyevr returns the selected range in ascending order.
  EigenPairs out;
  out.values = values.head(count).reverse();
  out.vectors = vectors.rowwise().reverse();
  return out;
}

ThinSvd thin_svd(const Matrix& m) {
  check_finite(m, "thin_svd");
  if (m.rows() == 0 || m.cols() == 0)
    throw InvalidInputError("thin_svd: empty matrix");
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Vector spd_solve(const Matrix& gram, const Vector& rhs) {
  check_finite(gram, "spd_solve");
  check_square(gram, "spd_solve");
  check_symmetric(gram, "spd_solve");
  if (gram.rows() != rhs.size())
    throw InvalidInputError("spd_solve: dimension mismatch between matrix and rhs");
  if (!rhs.allFinite())
    throw InvalidInputError("spd_solve: non-finite entries in rhs");
  Eigen::LLT<Matrix> llt(symmetrize(gram));
  if (llt.info() != Eigen::Success)
    throw NumericalError(
        "spd_solve: Cholesky factorization failed; matrix is singular or indefinite");
  return llt.solve(rhs);
}

}  // namespace prisma::linalg
