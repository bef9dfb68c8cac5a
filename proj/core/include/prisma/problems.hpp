#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "prisma/prox.hpp"
#include "prisma/solver.hpp"
#include "prisma/types.hpp"

namespace prisma::problems {

/// A set of observed entries of a host matrix. Indices are 0-based
/// internally (file formats are 1-based).
struct ObservedEntries {
  std::vector<Index> rows;
  std::vector<Index> cols;
  Vector values;
  Index host_rows = 0;
  Index host_cols = 0;

  Index count() const { return static_cast<Index>(rows.size()); }
};

/// Validates ranges, rejects duplicates, requires at least one entry.
ObservedEntries make_observed(std::vector<Index> rows, std::vector<Index> cols,
                              Vector values, Index host_rows, Index host_cols);

/// Every entry of m observed.
ObservedEntries observe_all(const Matrix& m);

/// Index bookkeeping for the semidefinite lift of a max-norm problem on an
/// m x n completion: the lift variable is symmetric of size (m+n) with
/// blocks [A X; X^T B], X the completion.
struct MaxNormLift {
  Index rows = 0;
  Index cols = 0;

  Index size() const { return rows + cols; }
  Matrix completion(const Matrix& lift) const;
  Matrix row_gram(const Matrix& lift) const;
  Matrix col_gram(const Matrix& lift) const;
  Matrix assemble(const Matrix& a, const Matrix& x, const Matrix& b) const;
};

struct MaxNormProblem {
  CompositeProblem problem;
  double default_a = 0.0;
  MaxNormLift lift;
};

/// Max-norm regularized completion via the PSD lift:
///   f(Y) = ||P_Omega(X-block) - observed||_F^2   (L_f = 2),
///   g(Y) = lambda * max diag(Y)                  (rho = lambda),
///   h    = indicator of the PSD cone.
/// Starts at Y = 0. default_a = lambda sqrt(|Omega|) / ((m+n) ||observed||).
MaxNormProblem make_maxnorm_completion(const ObservedEntries& omega, double lambda);

/// Same, reading the observed values out of m at omega's index pairs.
MaxNormProblem make_maxnorm_completion(const Matrix& m, const ObservedEntries& omega,
                                       double lambda);

struct RpcaProblem {
  CompositeProblem problem;
  double default_a = 0.0;
  Index rows = 0;
  Index cols = 0;
};

/// Robust PCA: f = 0, g(W) = lambda ||M - W||_1, h(W) = ||W||_tr.
/// Starts at W = 0. default_a = lambda sqrt(n1 n2) / ||M||_F.
RpcaProblem make_rpca(const Matrix& m, double lambda);

struct SicsProblem {
  CompositeProblem problem;
  double default_a = 0.0;
  Index n = 0;
};

/// Sparse inverse covariance selection:
///   f = <Sigma, .>, g = lambda ||.||_1 (rho = lambda n),
///   h = -log det(.) over positive definite matrices.
/// Starts at I/(1+lambda), the diagonal surrogate optimum.
/// default_a = lambda (1+lambda) sqrt(n).
SicsProblem make_sics(const Matrix& sigma, double lambda);

struct BasisPursuitProblem {
  CompositeProblem problem;
  double default_a = 0.0;
  std::shared_ptr<const prox::AffineSet> constraint;
};

/// Basis pursuit min { ||x||_1 : A x = b }: f = 0, g = ||.||_1
/// (rho = sqrt(d)), h the affine-set indicator. Starts at the minimum-norm
/// feasible point. default_a = sqrt(d) / ||x1|| (sqrt(d) when x1 ~ 0).
BasisPursuitProblem make_basis_pursuit(const Matrix& a, const Vector& b);

struct LowRankSparseInstance {
  Matrix m;
  Matrix w_true;
  Matrix s_true;
};

/// w_true = product of two standard Gaussian factors (rank <= r); s_true has
/// round(corruption * n1 * n2) entries uniform in [-5, 5]; m = w + s.
LowRankSparseInstance synth_lowrank_sparse(Index n1, Index n2, Index rank,
                                           double corruption, std::uint64_t seed);

struct CompletionInstance {
  Matrix m;
  ObservedEntries omega;
};

/// Rank-r Gaussian product with round(observe_fraction * m * n) entries
/// sampled without replacement.
CompletionInstance synth_completion(Index rows, Index cols, Index rank,
                                    double observe_fraction, std::uint64_t seed);

/// Empirical covariance of 10n samples drawn from N(0, P^{-1}), P a sparse
/// diagonally dominant precision matrix with off-diagonal density `density`.
Matrix synth_sparse_precision(Index n, double density, std::uint64_t seed);

struct BasisPursuitInstance {
  Matrix a;
  Vector b;
  Vector x_true;
};

/// Gaussian A (m x d), x_true with `sparsity` Gaussian entries, b = A x_true.
BasisPursuitInstance synth_basis_pursuit(Index m, Index d, Index sparsity,
                                         std::uint64_t seed);

}  // namespace prisma::problems
