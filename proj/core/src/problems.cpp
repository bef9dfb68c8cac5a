#include "prisma/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <utility>

#include <Eigen/Cholesky>

#include "prisma/linalg.hpp"
#include "prisma/rng.hpp"

namespace prisma::problems {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_lambda(double lambda, const char* op) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw InvalidInputError(std::string(op) + ": lambda must be positive");
}

}  // namespace

ObservedEntries make_observed(std::vector<Index> rows, std::vector<Index> cols,
                              Vector values, Index host_rows, Index host_cols) {
  if (rows.size() != cols.size() ||
      static_cast<Index>(rows.size()) != values.size())
    throw InvalidInputError("make_observed: index and value counts differ");
  if (rows.empty()) throw InvalidInputError("make_observed: no observed entries");
  if (host_rows < 1 || host_cols < 1)
    throw InvalidInputError("make_observed: host shape must be positive");

  std::set<std::pair<Index, Index>> seen;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const Index i = rows[t];
    const Index j = cols[t];
    if (i < 0 || i >= host_rows || j < 0 || j >= host_cols)
      throw InvalidInputError("make_observed: index (" + std::to_string(i) + ", " +
                              std::to_string(j) + ") outside the " +
                              std::to_string(host_rows) + "x" +
                              std::to_string(host_cols) + " host");
    if (!seen.insert({i, j}).second)
      throw InvalidInputError("make_observed: duplicate entry at (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")");
  }
  return {std::move(rows), std::move(cols), std::move(values), host_rows, host_cols};
}

ObservedEntries observe_all(const Matrix& m) {
  if (m.size() == 0) throw InvalidInputError("observe_all: empty matrix");
  std::vector<Index> rows, cols;
  Vector values(m.size());
  rows.reserve(static_cast<std::size_t>(m.size()));
  cols.reserve(static_cast<std::size_t>(m.size()));
  Index t = 0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      rows.push_back(i);
      cols.push_back(j);
      values[t++] = m(i, j);
    }
  return {std::move(rows), std::move(cols), std::move(values), m.rows(), m.cols()};
}

Matrix MaxNormLift::completion(const Matrix& lift) const {
  return lift.block(0, rows, rows, cols);
}

Matrix MaxNormLift::row_gram(const Matrix& lift) const {
  return lift.topLeftCorner(rows, rows);
}

Matrix MaxNormLift::col_gram(const Matrix& lift) const {
  return lift.bottomRightCorner(cols, cols);
}

Matrix MaxNormLift::assemble(const Matrix& a, const Matrix& x, const Matrix& b) const {
  if (a.rows() != rows || a.cols() != rows || b.rows() != cols ||
      b.cols() != cols || x.rows() != rows || x.cols() != cols)
    throw InvalidInputError("MaxNormLift::assemble: block shapes do not match");
  Matrix lift(size(), size());
  lift.topLeftCorner(rows, rows) = a;
  lift.block(0, rows, rows, cols) = x;
  lift.block(rows, 0, cols, rows) = x.transpose();
  lift.bottomRightCorner(cols, cols) = b;
  return lift;
}

MaxNormProblem make_maxnorm_completion(const ObservedEntries& omega, double lambda) {
  check_lambda(lambda, "make_maxnorm_completion");
  if (omega.count() < 1)
    throw InvalidInputError("make_maxnorm_completion: empty observation set");
  const double observed_norm = omega.values.norm();
  if (!(observed_norm > 0.0))
    throw InvalidInputError(
        "make_maxnorm_completion: observed entries are all zero; "
        "the schedule heuristic a is undefined");

  const auto data = std::make_shared<const ObservedEntries>(omega);
  const Index m = data->host_rows;
  const Index big = m + data->host_cols;

  // The lift variable is handled as a flattened (m+n)^2 vector. The loss
  // reads the two off-diagonal blocks symmetrized, so its value on the
  // symmetric iterates equals ||P_Omega(X) - P_Omega(M)||_F^2 while the
  // gradient (the residual placed in both mirror blocks) is exactly
  // finite-difference consistent.
  CompositeProblem p;
  p.f.value = [data, m, big](const Vector& v) {
    double acc = 0.0;
    for (Index t = 0; t < data->count(); ++t) {
      const Index i = data->rows[static_cast<std::size_t>(t)];
      const Index j = m + data->cols[static_cast<std::size_t>(t)];
      const double s = 0.5 * (v[i + big * j] + v[j + big * i]);
      const double r = s - data->values[t];
      acc += r * r;
    }
    return acc;
  };
  p.f.gradient = [data, m, big](const Vector& v) {
    Vector grad = Vector::Zero(big * big);
    for (Index t = 0; t < data->count(); ++t) {
      const Index i = data->rows[static_cast<std::size_t>(t)];
      const Index j = m + data->cols[static_cast<std::size_t>(t)];
      const double s = 0.5 * (v[i + big * j] + v[j + big * i]);
      const double r = s - data->values[t];
      grad[i + big * j] = r;
      grad[j + big * i] = r;
    }
    return grad;
  };
  p.f.smoothness = 2.0;

  p.g.value = [big, lambda](const Vector& v) {
    double top = v[0];
    for (Index t = 1; t < big; ++t) top = std::max(top, v[t + big * t]);
    return lambda * top;
  };
  p.g.prox = [big, lambda](const Vector& v, double alpha) {
    return flatten(prox::max_diag_prox(unflatten(v, big, big), alpha, lambda));
  };
  p.g.rho = lambda;

  p.h.value = [big](const Vector& v) {
    const Matrix y = unflatten(v, big, big);
    if (!linalg::is_symmetric(y, 1e-8)) return kInf;
    const auto eig = linalg::sym_eig(y);
    const double tol = 1e-8 * std::max(1.0, std::abs(eig.values[0]));
    return eig.values[big - 1] >= -tol ? 0.0 : kInf;
  };
  p.h.prox = [big](const Vector& v, double) {
    return flatten(prox::psd_project_full(unflatten(v, big, big)).projected);
  };
  p.h.make_run_prox = [big]() {
    auto hint = std::make_shared<int>(0);
    auto last_rank = std::make_shared<int>(-1);
    RunProx rp;
    rp.prox = [big, hint, last_rank](const Vector& v, double) {
      auto res = prox::psd_project(unflatten(v, big, big), *hint);
      *hint = res.rank;
      *last_rank = res.rank;
      return flatten(res.projected);
    };
    rp.rank = [last_rank]() { return *last_rank; };
    return rp;
  };

  p.x1 = Vector::Zero(big * big);

  MaxNormProblem built;
  built.problem = std::move(p);
  built.default_a = lambda * std::sqrt(static_cast<double>(data->count())) /
                    (static_cast<double>(big) * observed_norm);
  built.lift = {m, data->host_cols};
  return built;
}

MaxNormProblem make_maxnorm_completion(const Matrix& m, const ObservedEntries& omega,
                                       double lambda) {
  if (m.rows() != omega.host_rows || m.cols() != omega.host_cols)
    throw InvalidInputError(
        "make_maxnorm_completion: matrix shape does not match observation host");
  ObservedEntries filled = omega;
  for (Index t = 0; t < filled.count(); ++t)
    filled.values[t] = m(filled.rows[static_cast<std::size_t>(t)],
                         filled.cols[static_cast<std::size_t>(t)]);
  return make_maxnorm_completion(filled, lambda);
}

RpcaProblem make_rpca(const Matrix& m, double lambda) {
  check_lambda(lambda, "make_rpca");
  if (m.size() == 0) throw InvalidInputError("make_rpca: empty data matrix");
  if (!m.allFinite()) throw InvalidInputError("make_rpca: non-finite data");
  const double data_norm = m.norm();
  if (!(data_norm > 0.0))
    throw InvalidInputError(
        "make_rpca: zero data matrix; the schedule heuristic a is undefined");

  const auto data = std::make_shared<const Matrix>(m);
  const Index rows = m.rows();
  const Index cols = m.cols();

  CompositeProblem p;
  p.f = zero_smooth_term();

  p.g.value = [data, lambda](const Vector& v) {
    return lambda * (flatten(*data) - v).lpNorm<1>();
  };
  p.g.prox = [data, lambda, rows, cols](const Vector& v, double alpha) {
    return flatten(prox::l1_residual_prox(unflatten(v, rows, cols), alpha, lambda,
                                          *data));
  };
  p.g.rho = lambda * std::sqrt(static_cast<double>(rows * cols));

  p.h.value = [rows, cols](const Vector& v) {
    return linalg::thin_svd(unflatten(v, rows, cols)).s.sum();
  };
  p.h.prox = [rows, cols](const Vector& v, double alpha) {
    return flatten(prox::svt(unflatten(v, rows, cols), alpha));
  };
  p.h.make_run_prox = [rows, cols]() {
    auto last_rank = std::make_shared<int>(-1);
    RunProx rp;
    rp.prox = [rows, cols, last_rank](const Vector& v, double alpha) {
      auto res = prox::svt_detailed(unflatten(v, rows, cols), alpha);
      *last_rank = res.rank;
      return flatten(res.shrunk);
    };
    rp.rank = [last_rank]() { return *last_rank; };
    return rp;
  };

  p.x1 = Vector::Zero(rows * cols);

  RpcaProblem built;
  built.problem = std::move(p);
  built.default_a =
      lambda * std::sqrt(static_cast<double>(rows * cols)) / data_norm;
  built.rows = rows;
  built.cols = cols;
  return built;
}

SicsProblem make_sics(const Matrix& sigma, double lambda) {
  check_lambda(lambda, "make_sics");
  if (sigma.size() == 0) throw InvalidInputError("make_sics: empty matrix");
  if (!sigma.allFinite()) throw InvalidInputError("make_sics: non-finite entries");
  if (!linalg::is_symmetric(sigma))
    throw InvalidInputError("make_sics: covariance matrix must be symmetric");
  const Index n = sigma.rows();

  const auto sigma_flat = std::make_shared<const Vector>(flatten(sigma));

  CompositeProblem p;
  p.f.value = [sigma_flat](const Vector& v) { return sigma_flat->dot(v); };
  p.f.gradient = [sigma_flat](const Vector&) { return *sigma_flat; };
  p.f.smoothness = 0.0;

  p.g.value = [lambda](const Vector& v) { return lambda * v.lpNorm<1>(); };
  p.g.prox = [lambda](const Vector& v, double alpha) {
    return prox::soft_threshold(v, alpha * lambda);
  };
  p.g.rho = lambda * static_cast<double>(n);

  p.h.value = [n](const Vector& v) {
    const Matrix x = unflatten(v, n, n);
    if (!linalg::is_symmetric(x, 1e-8)) return kInf;
    const auto eig = linalg::sym_eig(x);
    if (eig.values[n - 1] <= 0.0) return kInf;
    return -eig.values.array().log().sum();
  };
  p.h.prox = [n](const Vector& v, double alpha) {
    return flatten(prox::logdet_prox(unflatten(v, n, n), alpha));
  };

  p.x1 = flatten(Matrix::Identity(n, n) / (1.0 + lambda));

  SicsProblem built;
  built.problem = std::move(p);
  built.default_a = lambda * (1.0 + lambda) * std::sqrt(static_cast<double>(n));
  built.n = n;
  return built;
}

BasisPursuitProblem make_basis_pursuit(const Matrix& a, const Vector& b) {
  auto set = std::make_shared<const prox::AffineSet>(a, b);
  const Index d = a.cols();

  CompositeProblem p;
  p.f = zero_smooth_term();

  p.g.value = [](const Vector& v) { return v.lpNorm<1>(); };
  p.g.prox = [](const Vector& v, double alpha) {
    return prox::soft_threshold(v, alpha);
  };
  p.g.rho = std::sqrt(static_cast<double>(d));

  const double feas_tol = 1e-9 * (1.0 + b.norm());
  p.h.value = [set, feas_tol](const Vector& v) {
    return set->residual(v) <= feas_tol ? 0.0 : kInf;
  };
  p.h.prox = [set](const Vector& v, double) { return set->project(v); };

  p.x1 = set->least_norm_point();

  BasisPursuitProblem built;
  const double x1_norm = p.x1.norm();
  built.default_a = x1_norm > 1e-12 ? std::sqrt(static_cast<double>(d)) / x1_norm
                                    : std::sqrt(static_cast<double>(d));
  built.problem = std::move(p);
  built.constraint = std::move(set);
  return built;
}

LowRankSparseInstance synth_lowrank_sparse(Index n1, Index n2, Index rank,
                                           double corruption, std::uint64_t seed) {
  if (n1 < 1 || n2 < 1) throw InvalidInputError("synth_lowrank_sparse: bad shape");
  if (rank < 1 || rank > std::min(n1, n2))
    throw InvalidInputError("synth_lowrank_sparse: rank out of range");
  if (!(corruption >= 0.0) || corruption >= 1.0)
    throw InvalidInputError("synth_lowrank_sparse: corruption must be in [0, 1)");

  Rng rng(seed);
  const Matrix left = rng.normal_matrix(n1, rank);
  const Matrix right = rng.normal_matrix(n2, rank);
  LowRankSparseInstance out;
  out.w_true = left * right.transpose();
  out.s_true = Matrix::Zero(n1, n2);
  const auto corrupted = static_cast<Index>(std::llround(
      corruption * static_cast<double>(n1) * static_cast<double>(n2)));
  for (const Index idx : rng.sample_without_replacement(n1 * n2, corrupted))
    out.s_true(idx % n1, idx / n1) = rng.uniform(-5.0, 5.0);
  out.m = out.w_true + out.s_true;
  return out;
}

CompletionInstance synth_completion(Index rows, Index cols, Index rank,
                                    double observe_fraction, std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw InvalidInputError("synth_completion: bad shape");
  if (rank < 1 || rank > std::min(rows, cols))
    throw InvalidInputError("synth_completion: rank out of range");
  if (!(observe_fraction > 0.0) || observe_fraction > 1.0)
    throw InvalidInputError("synth_completion: observe fraction must be in (0, 1]");

  Rng rng(seed);
  CompletionInstance out;
  out.m = rng.normal_matrix(rows, rank) * rng.normal_matrix(cols, rank).transpose();
  const auto observed = static_cast<Index>(std::llround(
      observe_fraction * static_cast<double>(rows) * static_cast<double>(cols)));
  if (observed < 1)
    throw InvalidInputError("synth_completion: observe fraction selects no entries");
  std::vector<Index> obs_rows, obs_cols;
  Vector values(observed);
  Index t = 0;
  for (const Index idx : rng.sample_without_replacement(rows * cols, observed)) {
    obs_rows.push_back(idx % rows);
    obs_cols.push_back(idx / rows);
    values[t++] = out.m(idx % rows, idx / rows);
  }
  out.omega = make_observed(std::move(obs_rows), std::move(obs_cols),
                            std::move(values), rows, cols);
  return out;
}

Matrix synth_sparse_precision(Index n, double density, std::uint64_t seed) {
  if (n < 1) throw InvalidInputError("synth_sparse_precision: n must be >= 1");
  if (!(density >= 0.0) || density > 1.0)
    throw InvalidInputError("synth_sparse_precision: density must be in [0, 1]");

  Rng rng(seed);
  Matrix precision = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (rng.uniform() < density) {
        const double value = rng.uniform(-1.0, 1.0);
        precision(i, j) = value;
        precision(j, i) = value;
      }
  // Strict diagonal dominance keeps the precision matrix well conditioned.
  for (Index i = 0; i < n; ++i)
    precision(i, i) = precision.row(i).cwiseAbs().sum() + 1.0;

  Eigen::LLT<Matrix> llt(precision);
  if (llt.info() != Eigen::Success)
    throw NumericalError("synth_sparse_precision: precision factorization failed");
  const Matrix covariance_chol =
      llt.solve(Matrix::Identity(n, n)).llt().matrixL();

  const Index samples = 10 * n;
  Matrix sample_cov = Matrix::Zero(n, n);
  for (Index s = 0; s < samples; ++s) {
    const Vector x = covariance_chol * rng.normal_vector(n);
    sample_cov.noalias() += x * x.transpose();
  }
  sample_cov /= static_cast<double>(samples);
  return linalg::symmetrize(sample_cov);
}

BasisPursuitInstance synth_basis_pursuit(Index m, Index d, Index sparsity,
                                         std::uint64_t seed) {
  if (m < 1 || d < m)
    throw InvalidInputError("synth_basis_pursuit: need 1 <= m <= d");
  if (sparsity < 1 || sparsity > d)
    throw InvalidInputError("synth_basis_pursuit: sparsity out of range");

  Rng rng(seed);
  BasisPursuitInstance out;
  out.a = rng.normal_matrix(m, d);
  out.x_true = Vector::Zero(d);
  for (const Index idx : rng.sample_without_replacement(d, sparsity))
    out.x_true[idx] = rng.normal();
  out.b = out.a * out.x_true;
  return out;
}

}  // namespace prisma::problems
