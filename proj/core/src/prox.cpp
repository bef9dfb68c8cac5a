#include "prisma/prox.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "prisma/linalg.hpp"

namespace prisma::prox {

namespace {

void check_positive(double value, const char* what, const char* op) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw InvalidInputError(std::string(op) + ": " + what + " must be positive");
}

double shrink(double x, double tau) {
  if (x > tau) return x - tau;
  if (x < -tau) return x + tau;
  return 0.0;
}

}  // namespace

Vector soft_threshold(const Vector& v, double tau) {
  if (tau < 0.0 || !std::isfinite(tau))
    throw InvalidInputError("soft_threshold: threshold must be nonnegative");
  if (tau == 0.0) return v;
  Vector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out[i] = shrink(v[i], tau);
  return out;
}

Matrix soft_threshold(const Matrix& v, double tau) {
  if (tau < 0.0 || !std::isfinite(tau))
    throw InvalidInputError("soft_threshold: threshold must be nonnegative");
  if (tau == 0.0) return v;
  Matrix out(v.rows(), v.cols());
  for (Index j = 0; j < v.cols(); ++j)
    for (Index i = 0; i < v.rows(); ++i) out(i, j) = shrink(v(i, j), tau);
  return out;
}

SvtResult svt_detailed(const Matrix& x, double tau) {
  if (tau < 0.0 || !std::isfinite(tau))
    throw InvalidInputError("svt: threshold must be nonnegative");
  const auto svd = linalg::thin_svd(x);
  int keep = 0;
  while (keep < svd.s.size() && svd.s[keep] > tau) ++keep;
  if (keep == 0) return {Matrix::Zero(x.rows(), x.cols()), 0};
  const Vector shrunk = svd.s.head(keep).array() - tau;
  return {svd.u.leftCols(keep) * shrunk.asDiagonal() * svd.v.leftCols(keep).transpose(),
          keep};
}

Matrix svt(const Matrix& x, double tau) {
  if (tau == 0.0) {
    if (!x.allFinite()) throw InvalidInputError("svt: non-finite entries");
    return x;
  }
  return svt_detailed(x, tau).shrunk;
}

namespace {

PsdProjection clamp_to_psd(const Matrix& x, const linalg::EigenPairs& eig,
                           int eigenpairs, int recomputes) {
  int keep = 0;
  while (keep < eig.values.size() && eig.values[keep] > 0.0) ++keep;
  Matrix projected;
  if (keep == 0) {
    projected = Matrix::Zero(x.rows(), x.cols());
  } else {
    projected = linalg::symmetrize(eig.vectors.leftCols(keep) *
                                   eig.values.head(keep).asDiagonal() *
                                   eig.vectors.leftCols(keep).transpose());
  }
  return {std::move(projected), keep, eigenpairs, recomputes};
}

}  // namespace

PsdProjection psd_project_full(const Matrix& x) {
  if (!linalg::is_symmetric(x))
    throw InvalidInputError("psd_project: matrix is asymmetric beyond tolerance");
  const auto eig = linalg::sym_eig(x);
  return clamp_to_psd(x, eig, static_cast<int>(x.rows()), 0);
}

PsdProjection psd_project(const Matrix& x, int rank_hint) {
  if (rank_hint < 0)
    throw InvalidInputError("psd_project: rank hint must be nonnegative");
  if (!linalg::is_symmetric(x))
    throw InvalidInputError("psd_project: matrix is asymmetric beyond tolerance");
  const int n = static_cast<int>(x.rows());
  int c = std::min(n, rank_hint + 1);
  int recomputes = 0;
  for (;;) {
    const auto eig = (c == n) ? linalg::sym_eig(x) : linalg::partial_sym_eig(x, c);
    if (eig.values[c - 1] > 0.0 && c < n) {
      c = std::min(n, c + 5);
      ++recomputes;
      continue;
    }
    return clamp_to_psd(x, eig, c, recomputes);
  }
}

Vector simplex_project(const Vector& v) {
  const Index n = v.size();
  if (n == 0) throw InvalidInputError("simplex_project: empty vector");
  if (!v.allFinite()) throw InvalidInputError("simplex_project: non-finite entries");

  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double threshold = sorted[0] - 1.0;  // overwritten below; rho = 1 always holds
  for (Index j = 0; j < n; ++j) {
    cumulative += sorted[static_cast<std::size_t>(j)];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (sorted[static_cast<std::size_t>(j)] - candidate > 0.0) threshold = candidate;
  }
  return (v.array() - threshold).max(0.0);
}

Matrix max_diag_prox(const Matrix& x, double alpha, double lambda) {
  check_positive(alpha, "alpha", "max_diag_prox");
  check_positive(lambda, "lambda", "max_diag_prox");
  if (x.rows() != x.cols() || x.rows() == 0)
    throw InvalidInputError("max_diag_prox: matrix must be square and nonempty");
  const double tau = alpha * lambda;
  const Vector d = x.diagonal();
  Matrix out = x;
  out.diagonal() = d - tau * simplex_project(d / tau);
  return out;
}

Matrix logdet_prox(const Matrix& x, double alpha) {
  check_positive(alpha, "alpha", "logdet_prox");
  const auto eig = linalg::sym_eig(x);
  const Index n = x.rows();
  Vector gamma(n);
  for (Index i = 0; i < n; ++i) {
    const double s = std::clamp(eig.values[i], -1e150, 1e150);
    const double root = std::sqrt(s * s + 4.0 * alpha);
    // Positive root of g^2 - s g - alpha = 0, rationalized for s < 0 to
    // avoid cancellation.
    gamma[i] = s >= 0.0 ? 0.5 * (s + root) : 2.0 * alpha / (root - s);
  }
  return linalg::symmetrize(eig.vectors * gamma.asDiagonal() *
                            eig.vectors.transpose());
}

Matrix l1_residual_prox(const Matrix& w, double alpha, double lambda,
                        const Matrix& data) {
  check_positive(alpha, "alpha", "l1_residual_prox");
  check_positive(lambda, "lambda", "l1_residual_prox");
  if (w.rows() != data.rows() || w.cols() != data.cols())
    throw InvalidInputError("l1_residual_prox: shape mismatch with data matrix");
  return data - soft_threshold(Matrix(data - w), alpha * lambda);
}

AffineSet::AffineSet(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() == 0 || a_.cols() == 0)
    throw InvalidInputError("AffineSet: empty constraint matrix");
  if (a_.rows() != b_.size())
    throw InvalidInputError("AffineSet: row count does not match rhs size");
  if (a_.rows() > a_.cols())
    throw InvalidInputError("AffineSet: more constraints than variables");
  if (!a_.allFinite() || !b_.allFinite())
    throw InvalidInputError("AffineSet: non-finite entries");
  gram_llt_.compute(a_ * a_.transpose());
  if (gram_llt_.info() != Eigen::Success)
    throw NumericalError("AffineSet: A A^T factorization failed; A is rank-deficient");
}

Vector AffineSet::project(const Vector& x) const {
  if (x.size() != a_.cols())
    throw InvalidInputError("AffineSet::project: dimension mismatch");
  const Vector z = gram_llt_.solve(a_ * x - b_);
  return x - a_.transpose() * z;
}

double AffineSet::residual(const Vector& x) const { return (a_ * x - b_).norm(); }

Vector AffineSet::least_norm_point() const {
  return a_.transpose() * gram_llt_.solve(b_);
}

}  // namespace prisma::prox
