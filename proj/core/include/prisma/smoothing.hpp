#pragma once

#include <functional>

#include "prisma/types.hpp"

namespace prisma {

/// A convex rho-Lipschitz term accessed through its value and proximity
/// operator. rho is declared, not estimated: the convergence bounds are
/// stated in terms of the known constant.
struct LipschitzTerm {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&, double)> prox;  // (point, alpha > 0)
  double rho = 0.0;
};

/// g = 0: identity prox, rho = 0. Makes plain accelerated proximal descent
/// a degenerate configuration rather than a separate code path.
LipschitzTerm zero_lipschitz_term();

// The Moreau envelope of g at smoothing level beta is
//   inf_u { ||x - u||^2 / (2 beta) + g(u) },
// a (1/beta)-smooth approximation lying within beta*rho^2/2 below g.
// It is never materialized as an object: beta changes every iteration.

double moreau_value(const LipschitzTerm& g, const Vector& x, double beta);

/// Gradient of the envelope: (x - prox_g(x, beta)) / beta. Its norm is
/// bounded by g.rho.
Vector moreau_grad(const LipschitzTerm& g, const Vector& x, double beta);

}  // namespace prisma
