#include "prisma/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace prisma {

SmoothTerm zero_smooth_term() {
  SmoothTerm f;
  f.value = [](const Vector&) { return 0.0; };
  f.gradient = [](const Vector& x) { return Vector(Vector::Zero(x.size())); };
  f.smoothness = 0.0;
  return f;
}

SimpleTerm zero_simple_term() {
  SimpleTerm h;
  h.value = [](const Vector&) { return 0.0; };
  h.prox = [](const Vector& x, double) { return x; };
  return h;
}

double objective(const CompositeProblem& p, const Vector& x) {
  return p.f.value(x) + p.g.value(x) + p.h.value(x);
}

BetaSchedule BetaSchedule::fixed(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw InvalidInputError("BetaSchedule::fixed: beta must be positive");
  return BetaSchedule(false, beta);
}

BetaSchedule BetaSchedule::dynamic(double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw InvalidInputError("BetaSchedule::dynamic: a must be positive");
  return BetaSchedule(true, a);
}

double BetaSchedule::beta(int k) const {
  if (k < 1) throw InvalidInputError("BetaSchedule::beta: k starts at 1");
  return dynamic_ ? 1.0 / (parameter_ * k) : parameter_;
}

BetaSchedule fixed_beta(int horizon, double radius, double rho) {
  if (horizon < 1) throw InvalidInputError("fixed_beta: horizon must be >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw InvalidInputError("fixed_beta: radius estimate must be positive");
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw InvalidInputError("fixed_beta: rho must be positive");
  return BetaSchedule::fixed(2.0 * radius / (rho * (horizon + 1)));
}

double theta_next(double theta, double l_current, double l_next) {
  if (!(theta > 0.0) || theta > 1.0)
    throw InvalidInputError("theta_next: theta must lie in (0, 1]");
  if (!(l_current > 0.0) || !(l_next > 0.0))
    throw InvalidInputError("theta_next: smoothness constants must be positive");
  const double ratio = 4.0 * l_next / (theta * theta * l_current);
  return 2.0 / (1.0 + std::sqrt(1.0 + ratio));
}

SolverState initial_state(const CompositeProblem& p, double beta1) {
  if (!(beta1 > 0.0) || !std::isfinite(beta1))
    throw InvalidInputError("initial_state: beta1 must be positive");
  SolverState s;
  s.k = 1;
  s.x = p.x1;
  s.x_prev = p.x1;
  s.y = p.x1;
  s.theta = 1.0;
  s.l = p.f.smoothness + 1.0 / beta1;
  return s;
}

SolverState prisma_step(const SolverState& s, const CompositeProblem& p,
                        double beta_k, double beta_next) {
  return prisma_step(s, p, beta_k, beta_next, p.h.prox);
}

SolverState prisma_step(const SolverState& s, const CompositeProblem& p,
                        double beta_k, double beta_next,
                        const std::function<Vector(const Vector&, double)>& h_prox) {
  if (!(beta_k > 0.0) || !(beta_next > 0.0))
    throw InvalidInputError("prisma_step: smoothing parameters must be positive");
  if (beta_next > beta_k)
    throw ScheduleViolationError(
        "prisma_step: beta increased between iterations " + std::to_string(s.k) +
        " and " + std::to_string(s.k + 1) + "; the sequence must be nonincreasing");

  const double l_f = p.f.smoothness;
  const double l_k = l_f + 1.0 / beta_k;
  const double l_next = l_f + 1.0 / beta_next;
  const double theta_n = theta_next(s.theta, l_k, l_next);

  // 1/(L_k beta_k) computed as 1/(1 + L_f beta_k): algebraically identical,
  // and exact when f = 0 so the backward-backward collapse holds bitwise.
  const double w = 1.0 / (1.0 + l_f * beta_k);
  const Vector u = (1.0 - w) * s.y - (1.0 / l_k) * p.f.gradient(s.y) +
                   w * p.g.prox(s.y, beta_k);
  Vector x_next = h_prox(u, 1.0 / l_k);
  if (!x_next.allFinite())
    throw NumericalError("prisma_step: non-finite iterate at iteration " +
                         std::to_string(s.k));
  Vector y_next = x_next + theta_n * (1.0 / s.theta - 1.0) * (x_next - s.x);
  if (!y_next.allFinite())
    throw NumericalError("prisma_step: non-finite extrapolation at iteration " +
                         std::to_string(s.k));

  SolverState next;
  next.k = s.k + 1;
  next.x = std::move(x_next);
  next.x_prev = s.x;
  next.y = std::move(y_next);
  next.theta = theta_n;
  next.l = l_next;
  return next;
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Converged:
      return "converged";
    case StopReason::IterationCap:
      return "iteration-cap";
  }
  return "unknown";
}

SolveResult solve(const CompositeProblem& p, const BetaSchedule& schedule,
                  const SolveOptions& opts) {
  if (opts.max_iter < 1) throw InvalidInputError("solve: max_iter must be >= 1");
  if (!(opts.rel_tol >= 0.0)) throw InvalidInputError("solve: rel_tol must be >= 0");
  if (opts.trace_every < 1) throw InvalidInputError("solve: trace_every must be >= 1");
  if (p.x1.size() == 0 || !p.x1.allFinite())
    throw InvalidInputError("solve: initial point is empty or non-finite");
  if (!std::isfinite(p.h.value(p.x1)))
    throw InvalidInputError("solve: initial point lies outside dom h");

  const RunProx run_prox =
      p.h.make_run_prox ? p.h.make_run_prox() : RunProx{p.h.prox, nullptr};

  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&start]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  };

  SolveResult result;
  SolverState state = initial_state(p, schedule.beta(1));

  double best = objective(p, state.x);
  if (!std::isfinite(best))
    throw NumericalError("solve: objective not finite at the initial point");
  Vector best_x = state.x;
  result.trace.push_back({1, best, best, 0.0, elapsed(), -1});

  StopReason reason = StopReason::IterationCap;
  int steps = 0;
  double final_objective = best;
  bool final_evaluated = true;

  for (int k = 1; k <= opts.max_iter; ++k) {
    state = prisma_step(state, p, schedule.beta(k), schedule.beta(k + 1),
                        run_prox.prox);
    ++steps;

    const double step_norm = (state.x - state.x_prev).norm();
    const double base = state.x_prev.norm();
    const double rel_step = base >= 1e-12 ? step_norm / base : step_norm;
    const bool stopping = rel_step < opts.rel_tol;
    const bool last = stopping || k == opts.max_iter;

    const int iterate = k + 1;
    final_evaluated = false;
    if ((iterate - 1) % opts.trace_every == 0 || last) {
      const double value = objective(p, state.x);
      if (!std::isfinite(value))
        throw NumericalError("solve: objective not finite at iteration " +
                             std::to_string(iterate));
      if (value < best) {
        best = value;
        best_x = state.x;
      }
      final_objective = value;
      final_evaluated = true;
      const int rank = run_prox.rank ? run_prox.rank() : -1;
      result.trace.push_back({iterate, value, best, rel_step, elapsed(), rank});
    }

    if (stopping) {
      reason = StopReason::Converged;
      break;
    }
  }

  result.best_x = std::move(best_x);
  result.best_objective = best;
  result.final_x = state.x;
  result.final_objective = final_evaluated ? final_objective : objective(p, state.x);
  result.iterations = steps;
  result.reason = reason;
  return result;
}

}  // namespace prisma
