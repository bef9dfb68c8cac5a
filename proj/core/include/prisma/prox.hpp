#pragma once

#include <Eigen/Cholesky>

#include "prisma/types.hpp"

namespace prisma::prox {

// Every operator here evaluates prox_phi(x, alpha) =
// argmin_u { ||x - u||^2 / (2 alpha) + phi(u) } for its phi, with alpha
// passed explicitly because the solver changes it every iteration.

/// Elementwise shrinkage: prox of tau*||.||_1 with the step folded into tau.
Vector soft_threshold(const Vector& v, double tau);
Matrix soft_threshold(const Matrix& v, double tau);

/// Singular value thresholding: prox of tau*||.||_tr.
Matrix svt(const Matrix& x, double tau);

struct SvtResult {
  Matrix shrunk;
  int rank;  // singular values strictly above the threshold
};
SvtResult svt_detailed(const Matrix& x, double tau);

struct PsdProjection {
  Matrix projected;
  int rank;        // strictly positive eigenvalues retained
  int eigenpairs;  // eigenpairs in the decomposition finally used (<= n)
  int recomputes;  // extra decompositions taken by the adaptive widening
};

/// Projection onto the PSD cone by full eigendecomposition and clamping.
PsdProjection psd_project_full(const Matrix& x);

/// Adaptive projection: computes c = min(n, rank_hint + 1) top eigenpairs,
/// widening c by 5 until a nonpositive eigenvalue shows up (or c = n), then
/// clamps. Identical to the full-spectrum projection up to solver accuracy;
/// the hint only changes how much work is done.
PsdProjection psd_project(const Matrix& x, int rank_hint);

/// Euclidean projection onto { p : p_i >= 0, sum p_i = 1 }, by the
/// sort-then-threshold rule.
Vector simplex_project(const Vector& v);

/// Prox of lambda * max(diagonal): off-diagonal entries pass through
/// untouched, the diagonal d becomes d - alpha*lambda * P_simplex(d / (alpha*lambda)).
Matrix max_diag_prox(const Matrix& x, double alpha, double lambda);

/// Prox of -log det over symmetric positive definite matrices. With
/// X = Q S Q^T the result is Q diag(g) Q^T, g_i the positive root of
/// g^2 - s_i g - alpha = 0.
Matrix logdet_prox(const Matrix& x, double alpha);

/// Prox of lambda * ||data - W||_1, via translation of the L1 prox:
/// data - soft_threshold(data - w, alpha*lambda).
Matrix l1_residual_prox(const Matrix& w, double alpha, double lambda,
                        const Matrix& data);

/// The affine set { x : A x = b } with the Gram factorization of A A^T
/// cached at construction. A must have full row rank and rows <= cols.
class AffineSet {
 public:
  AffineSet(Matrix a, Vector b);

  /// proj(x) = x - A^T z with A A^T z = A x - b. Prox of the set indicator
  /// for every step size.
  Vector project(const Vector& x) const;

  /// ||A x - b||.
  double residual(const Vector& x) const;

  /// A^T (A A^T)^{-1} b, the minimum-norm feasible point.
  Vector least_norm_point() const;

  const Matrix& a() const { return a_; }
  const Vector& b() const { return b_; }

 private:
  Matrix a_;
  Vector b_;
  Eigen::LLT<Matrix> gram_llt_;
};

}  // namespace prisma::prox
