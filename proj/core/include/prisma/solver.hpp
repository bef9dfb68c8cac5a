#pragma once

#include <functional>
#include <vector>

#include "prisma/smoothing.hpp"
#include "prisma/types.hpp"

namespace prisma {

/// The differentiable term: value, gradient, and the Lipschitz constant of
/// the gradient (L_f, assumed known; there is no backtracking).
struct SmoothTerm {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  double smoothness = 0.0;
};

/// f = 0.
SmoothTerm zero_smooth_term();

/// Run-local prox handle for the simple term: may warm-start between
/// iterations (adaptive eigendecomposition ranks) and report a rank
/// estimate for the trace. rank may be null.
struct RunProx {
  std::function<Vector(const Vector&, double)> prox;
  std::function<int()> rank;
};

/// The possibly-infinite "simple" term, accessed through its prox. value
/// returns +infinity outside the domain. make_run_prox, when set, builds a
/// fresh warm-startable prox per solve run; solve() prefers it over `prox`.
struct SimpleTerm {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&, double)> prox;
  std::function<RunProx()> make_run_prox;
};

/// h = 0.
SimpleTerm zero_simple_term();

/// min F(x) = f(x) + g(x) + h(x). x1 must lie in dom h.
struct CompositeProblem {
  SmoothTerm f;
  LipschitzTerm g;
  SimpleTerm h;
  Vector x1;
};

/// F(x) with infinity absorbing.
double objective(const CompositeProblem& p, const Vector& x);

/// Smoothing-parameter policy: Fixed(beta), or Dynamic(a) with
/// beta_k = 1/(a k). Both sequences are positive and nonincreasing.
class BetaSchedule {
 public:
  static BetaSchedule fixed(double beta);
  static BetaSchedule dynamic(double a);

  double beta(int k) const;  // k >= 1
  bool is_dynamic() const { return dynamic_; }
  double parameter() const { return parameter_; }

 private:
  BetaSchedule(bool dynamic, double parameter)
      : dynamic_(dynamic), parameter_(parameter) {}
  bool dynamic_;
  double parameter_;
};

/// Fixed schedule tuned for a known iteration budget:
/// beta = 2 R / (rho (horizon + 1)). R estimates ||x1 - x*||; the guarantee
/// degrades with the estimate error, and there is no reliable way to know R
/// in advance.
BetaSchedule fixed_beta(int horizon, double radius, double rho);

/// Momentum recursion: returns
///   2 / (1 + sqrt(1 + 4 l_next / (theta^2 l_current))),
/// the positive solution of 1/t^2 - 1/t = (l_next / l_current) / theta^2.
double theta_next(double theta, double l_current, double l_next);

struct SolverState {
  int k = 1;
  Vector x;
  Vector x_prev;
  Vector y;
  double theta = 1.0;
  double l = 0.0;  // L_k = L_f + 1/beta_k
};

SolverState initial_state(const CompositeProblem& p, double beta1);

/// One iteration: from (x_k, y_k, theta_k) under smoothing beta_k to
/// (x_{k+1}, y_{k+1}, theta_{k+1}) under beta_next. Requires
/// beta_next <= beta_k. The x-update is
///   x_{k+1} = prox_h((1 - 1/(L_k beta_k)) y_k - (1/L_k) grad f(y_k)
///             + (1/(L_k beta_k)) prox_g(y_k, beta_k), 1/L_k),
/// which lands in dom h by construction.
SolverState prisma_step(const SolverState& s, const CompositeProblem& p,
                        double beta_k, double beta_next);

/// Same, routing the h-prox through a caller-supplied function (used by
/// solve() for warm-started run-local proxes).
SolverState prisma_step(const SolverState& s, const CompositeProblem& p,
                        double beta_k, double beta_next,
                        const std::function<Vector(const Vector&, double)>& h_prox);

/// One record per traced iterate: iter is the iterate index (1 = initial
/// point), objective is F at that iterate, rel_step is the relative step of
/// the transition that produced it, rank is -1 when not applicable.
struct TraceRecord {
  int iter = 0;
  double objective = 0.0;
  double best_objective = 0.0;
  double rel_step = 0.0;
  double elapsed_s = 0.0;
  int rank = -1;
};

struct SolveOptions {
  int max_iter = 1000;
  double rel_tol = 1e-5;
  /// Objective evaluation cadence; F can be expensive (an SVD for the
  /// trace norm), so iterates between trace points are not evaluated.
  int trace_every = 1;
};

enum class StopReason { Converged, IterationCap };
const char* to_string(StopReason reason);

struct SolveResult {
  Vector best_x;
  double best_objective = 0.0;
  Vector final_x;
  double final_objective = 0.0;
  int iterations = 0;
  StopReason reason = StopReason::IterationCap;
  std::vector<TraceRecord> trace;
};

/// Runs the iteration until the relative step ||x_{k+1}-x_k|| / ||x_k||
/// drops below rel_tol (absolute step when ||x_k|| < 1e-12) or max_iter is
/// hit. Accelerated methods are not monotone, so the best evaluated iterate
/// is tracked and returned alongside the last one.
SolveResult solve(const CompositeProblem& p, const BetaSchedule& schedule,
                  const SolveOptions& opts = {});

}  // namespace prisma
