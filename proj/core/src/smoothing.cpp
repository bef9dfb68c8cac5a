#include "prisma/smoothing.hpp"

#include <cmath>

namespace prisma {

namespace {

void check_beta(double beta, const char* op) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw InvalidInputError(std::string(op) + ": beta must be positive");
}

}  // namespace

LipschitzTerm zero_lipschitz_term() {
  LipschitzTerm g;
  g.value = [](const Vector&) { return 0.0; };
  g.prox = [](const Vector& x, double) { return x; };
  g.rho = 0.0;
  return g;
}

double moreau_value(const LipschitzTerm& g, const Vector& x, double beta) {
  check_beta(beta, "moreau_value");
  const Vector p = g.prox(x, beta);
  return (x - p).squaredNorm() / (2.0 * beta) + g.value(p);
}

Vector moreau_grad(const LipschitzTerm& g, const Vector& x, double beta) {
  check_beta(beta, "moreau_grad");
  return (x - g.prox(x, beta)) / beta;
}

}  // namespace prisma
