#pragma once

#include <functional>

#include "prisma/solver.hpp"
#include "prisma/types.hpp"

// Independent numerical oracles used by the tests. Deliberately slow and
// simple, and kept apart from the production code so a bug cannot be shared
// between an implementation and its verifier.

namespace prisma::testkit {

using ValueFn = std::function<double(const Vector&)>;

/// ||x - u||^2 / (2 alpha) + phi(u).
double prox_objective(const ValueFn& phi, const Vector& x, double alpha,
                      const Vector& u);

/// Numerical prox of phi at x: coarse grid around x (21 points per axis,
/// radius ||x|| + alpha*rho_hint + 1) followed by direct-search refinement
/// over coordinate, coordinate-difference and seeded random directions,
/// step-halving down to 1e-7. Dimension capped at 5.
Vector prox_oracle(const ValueFn& phi, const Vector& x, double alpha,
                   double rho_hint = 1.0);

/// Audit record of one candidate-vs-oracle prox comparison: both points,
/// both objective values, their distance, and the tolerance applied.
struct OracleReport {
  Vector oracle_point;
  double oracle_value = 0.0;
  Vector candidate_point;
  double candidate_value = 0.0;
  double discrepancy = 0.0;
  double tolerance = 0.0;

  /// The oracle must never undercut the candidate's objective materially
  /// (otherwise the candidate is not the minimizer), and the points must
  /// agree up to the tolerance plus the slack explained by the oracle's own
  /// residual gap under (1/alpha)-strong convexity.
  bool candidate_ok = false;
};

/// Runs prox_oracle on phi at (x, alpha) and audits `candidate` against it.
OracleReport compare_prox(const ValueFn& phi, const Vector& x, double alpha,
                          const Vector& candidate, double tolerance,
                          double rho_hint = 1.0);

/// Centered differences per coordinate. Throws naming the coordinate when a
/// probe value is not finite.
Vector fd_gradient(const ValueFn& f, const Vector& x, double step);

/// Exact simplex projection by enumerating all 2^n - 1 support patterns
/// (n <= 16).
Vector simplex_oracle(const Vector& v);

/// Projection onto { u : A u = b } through the dense KKT system
/// [I A^T; A 0], solved by column-pivoted Householder QR -- a different
/// route than the production Cholesky-of-the-Gram path.
Vector affine_projection_oracle(const Matrix& a, const Vector& b, const Vector& x);

struct ReferenceOptions {
  int prisma_max_iter = 200000;
  double prisma_rel_tol = 1e-10;
  long subgradient_iters = 200000;
  double agreement_tol = 1e-3;
  double subgradient_step_scale = 1.0;
  int subgradient_eval_every = 1;  // objective sampling cadence
};

struct ReferenceOptimum {
  double f_star = 0.0;
  Vector x_star;
  double f_subgradient = 0.0;  // best objective of the cross-check run
  bool agreed = false;
};

/// High-accuracy solver run cross-checked by a proximal subgradient run with
/// step c/sqrt(k). Disagreement beyond agreement_tol (relative) is flagged
/// in the report, never silently accepted.
ReferenceOptimum reference_optimum(const CompositeProblem& p,
                                   const BetaSchedule& schedule,
                                   const ReferenceOptions& opts = {});

}  // namespace prisma::testkit
