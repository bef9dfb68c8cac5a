#include <doctest.h>

#include <cmath>
#include <set>

#include "prisma/linalg.hpp"
#include "prisma/problems.hpp"
#include "prisma/rng.hpp"
#include "testkit.hpp"

using namespace prisma;
using namespace prisma::problems;

namespace {

ObservedEntries random_subset(Rng& rng, const Matrix& m, Index count) {
  std::vector<Index> rows, cols;
  Vector values(count);
  Index t = 0;
  for (const Index idx : rng.sample_without_replacement(m.size(), count)) {
    rows.push_back(idx % m.rows());
    cols.push_back(idx / m.rows());
    values[t++] = m(idx % m.rows(), idx / m.rows());
  }
  return make_observed(std::move(rows), std::move(cols), std::move(values),
                       m.rows(), m.cols());
}

}  // namespace

TEST_CASE("make_observed validates its inputs") {
  CHECK_THROWS_AS(make_observed({}, {}, Vector(), 2, 2), InvalidInputError);
  CHECK_THROWS_AS(make_observed({0, 0}, {1, 1}, Vector::Ones(2), 2, 2),
                  InvalidInputError);  // duplicate
  CHECK_THROWS_AS(make_observed({2}, {0}, Vector::Ones(1), 2, 2),
                  InvalidInputError);  // out of range
}

TEST_CASE("MaxNormLift block extraction is consistent with assembly") {
  Rng rng(40);
  const MaxNormLift lift{3, 2};
  const Matrix a = linalg::symmetrize(rng.normal_matrix(3, 3));
  const Matrix b = linalg::symmetrize(rng.normal_matrix(2, 2));
  const Matrix x = rng.normal_matrix(3, 2);
  const Matrix y = lift.assemble(a, x, b);
  CHECK(linalg::is_symmetric(y));
  CHECK((lift.completion(y) - x).norm() == 0.0);
  CHECK((lift.row_gram(y) - a).norm() == 0.0);
  CHECK((lift.col_gram(y) - b).norm() == 0.0);
}

TEST_CASE("max-norm completion loss gradient passes finite differences") {
  Rng rng(41);
  const Matrix m = rng.normal_matrix(3, 3);  // lift size 6
  const auto built = make_maxnorm_completion(m, random_subset(rng, m, 5), 0.4);
  const Vector point = rng.normal_vector(36);
  const Vector analytic = built.problem.f.gradient(point);
  const Vector numeric = testkit::fd_gradient(built.problem.f.value, point,
                                              1e-5 * (1.0 + point.norm()));
  CHECK((analytic - numeric).norm() <= 1e-5 * std::max(1.0, analytic.norm()));
}

TEST_CASE("max-norm completion heuristic a matches the closed formula") {
  Rng rng(42);
  const Matrix m = rng.normal_matrix(4, 4);
  const auto omega = random_subset(rng, m, 8);
  const double lambda = 0.2 * 8;  // the experiments' lambda scale
  const auto built = make_maxnorm_completion(omega, lambda);
  const double expected =
      lambda * std::sqrt(8.0) / (8.0 * omega.values.norm());
  CHECK(built.default_a == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("max-norm completion rejects degenerate observations") {
  ObservedEntries empty;
  empty.host_rows = empty.host_cols = 2;
  CHECK_THROWS_AS(make_maxnorm_completion(empty, 1.0), InvalidInputError);
  // All-zero observed values leave the heuristic undefined.
  CHECK_THROWS_AS(
      make_maxnorm_completion(make_observed({0}, {0}, Vector::Zero(1), 1, 1), 1.0),
      InvalidInputError);
}

TEST_CASE("max-norm iterates stay symmetric through the loop") {
  Rng rng(43);
  const Matrix m = rng.normal_matrix(4, 3);
  const auto built = make_maxnorm_completion(m, random_subset(rng, m, 6), 1.2);
  const Index big = built.lift.size();
  const BetaSchedule schedule = BetaSchedule::dynamic(built.default_a);
  SolverState state = initial_state(built.problem, schedule.beta(1));
  for (int k = 1; k <= 25; ++k) {
    state = prisma_step(state, built.problem, schedule.beta(k), schedule.beta(k + 1));
    const Matrix y = unflatten(state.x, big, big);
    CHECK((y - y.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("rpca builder rejects zero data") {
  CHECK_THROWS_AS(make_rpca(Matrix::Zero(3, 3), 0.5), InvalidInputError);
}

TEST_CASE("rpca objective equals the hand-summed decomposition form") {
  const auto inst = synth_lowrank_sparse(6, 5, 2, 0.1, 17);
  const auto built = make_rpca(inst.m, 0.3);
  const Vector w = flatten(inst.w_true);
  const double direct = linalg::thin_svd(inst.w_true).s.sum() +
                        0.3 * (inst.m - inst.w_true).lpNorm<1>();
  CHECK(objective(built.problem, w) == doctest::Approx(direct).epsilon(1e-12));
  // Eliminating S through S = M - W reproduces the constrained form: the
  // sparse part at the ground truth is exactly s_true.
  CHECK(((inst.m - inst.w_true) - inst.s_true).norm() == 0.0);
}

TEST_CASE("rpca heuristic a on a fixed-norm instance") {
  const Matrix m = Matrix::Constant(50, 50, 0.2);  // Frobenius norm 10
  const auto built = make_rpca(m, 0.1);
  CHECK(built.default_a == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("rpca with no corruption and a large lambda returns the data") {
  const auto inst = synth_lowrank_sparse(10, 8, 1, 0.0, 5);
  const auto built = make_rpca(inst.m, 10.0);
  SolveOptions opts;
  opts.max_iter = 2000;
  opts.rel_tol = 0.0;
  opts.trace_every = 50;
  const auto result = solve(built.problem, BetaSchedule::dynamic(built.default_a), opts);
  const Matrix w = unflatten(result.best_x, 10, 8);
  CHECK((w - inst.m).norm() <= 1e-2 * inst.m.norm());
}

TEST_CASE("sics scalar case has the closed-form optimum") {
  Matrix sigma(1, 1);
  sigma << 1.0;
  const auto built = make_sics(sigma, 0.5);
  SolveOptions opts;
  opts.max_iter = 20000;
  opts.rel_tol = 1e-13;
  const auto result = solve(built.problem, BetaSchedule::dynamic(built.default_a), opts);
  CHECK(result.best_x[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(result.best_objective ==
        doctest::Approx(-std::log(2.0 / 3.0) + 1.0).epsilon(1e-8));
}

TEST_CASE("sics heuristic a arithmetic") {
  const auto built = make_sics(Matrix::Identity(100, 100), 0.5);
  CHECK(built.default_a == doctest::Approx(7.5).epsilon(1e-12));
}

TEST_CASE("sics rejects asymmetric input") {
  Matrix bad = Matrix::Identity(3, 3);
  bad(0, 2) = 0.3;
  CHECK_THROWS_AS(make_sics(bad, 0.5), InvalidInputError);
}

TEST_CASE("sics iterates remain positive definite") {
  const Matrix sigma = synth_sparse_precision(8, 0.3, 23);
  const auto built = make_sics(sigma, 0.5);
  const BetaSchedule schedule = BetaSchedule::dynamic(built.default_a);
  SolverState state = initial_state(built.problem, schedule.beta(1));
  for (int k = 1; k <= 40; ++k) {
    state = prisma_step(state, built.problem, schedule.beta(k), schedule.beta(k + 1));
    const auto eig = linalg::sym_eig(unflatten(state.x, 8, 8));
    CHECK(eig.values.minCoeff() > 0.0);
  }
}

TEST_CASE("basis pursuit with a square system has a singleton feasible set") {
  Rng rng(44);
  const Matrix a = Matrix::Identity(4, 4);
  const Vector b = rng.normal_vector(4);
  const auto built = make_basis_pursuit(a, b);
  CHECK((built.problem.x1 - b).norm() <= 1e-12);
  const auto result = solve(built.problem, BetaSchedule::dynamic(built.default_a),
                            {200, 1e-10, 1});
  CHECK((result.best_x - b).norm() <= 1e-9 * (1.0 + b.norm()));
}

TEST_CASE("basis pursuit starts feasible") {
  const auto inst = synth_basis_pursuit(15, 60, 4, 2);
  const auto built = make_basis_pursuit(inst.a, inst.b);
  CHECK(built.constraint->residual(built.problem.x1) <= 1e-10 * (1.0 + inst.b.norm()));
}

TEST_CASE("every builder satisfies the shared term contracts") {
  Rng rng(45);

  struct Named {
    const char* name;
    CompositeProblem problem;
  };
  std::vector<Named> problems;

  const Matrix mc = rng.normal_matrix(3, 3);
  problems.push_back(
      {"matcomp", make_maxnorm_completion(mc, random_subset(rng, mc, 5), 0.7).problem});
  problems.push_back(
      {"rpca", make_rpca(synth_lowrank_sparse(5, 4, 2, 0.1, 7).m, 0.3).problem});
  problems.push_back({"sics", make_sics(synth_sparse_precision(4, 0.4, 8), 0.5).problem});
  const auto bp = synth_basis_pursuit(6, 12, 3, 9);
  problems.push_back({"bp", make_basis_pursuit(bp.a, bp.b).problem});

  for (const auto& [name, p] : problems) {
    CAPTURE(name);
    // x1 lies in dom h.
    CHECK(std::isfinite(p.h.value(p.x1)));

    // Gradient of f agrees with centered differences.
    const Index dim = p.x1.size();
    const Vector probe = p.x1 + 0.1 * rng.normal_vector(dim);
    const Vector analytic = p.f.gradient(probe);
    const Vector numeric =
        testkit::fd_gradient(p.f.value, probe, 1e-5 * (1.0 + probe.norm()));
    CHECK((analytic - numeric).norm() <= 1e-5 * std::max(1.0, analytic.norm()));

    // g is rho-Lipschitz on sampled pairs.
    for (int trial = 0; trial < 10; ++trial) {
      const Vector u = p.x1 + rng.normal_vector(dim);
      const Vector v = p.x1 + rng.normal_vector(dim);
      CHECK(std::abs(p.g.value(u) - p.g.value(v)) <=
            p.g.rho * (u - v).norm() + 1e-9);
    }
  }
}

TEST_CASE("synthetic generators are deterministic") {
  const auto a1 = synth_lowrank_sparse(6, 7, 2, 0.2, 31);
  const auto a2 = synth_lowrank_sparse(6, 7, 2, 0.2, 31);
  CHECK((a1.m - a2.m).norm() == 0.0);
  CHECK((a1.s_true - a2.s_true).norm() == 0.0);

  const auto c1 = synth_completion(5, 6, 2, 0.5, 12);
  const auto c2 = synth_completion(5, 6, 2, 0.5, 12);
  CHECK((c1.m - c2.m).norm() == 0.0);
  CHECK(c1.omega.rows == c2.omega.rows);
  CHECK((c1.omega.values - c2.omega.values).norm() == 0.0);

  CHECK((synth_sparse_precision(6, 0.3, 4) - synth_sparse_precision(6, 0.3, 4))
            .norm() == 0.0);

  const auto b1 = synth_basis_pursuit(5, 20, 3, 2);
  const auto b2 = synth_basis_pursuit(5, 20, 3, 2);
  CHECK((b1.a - b2.a).norm() == 0.0);
  CHECK((b1.x_true - b2.x_true).norm() == 0.0);
}

TEST_CASE("uncorrupted low-rank instances have exactly r nonzero singular values") {
  const auto inst = synth_lowrank_sparse(8, 9, 3, 0.0, 13);
  CHECK((inst.m - inst.w_true).norm() == 0.0);
  const auto svd = linalg::thin_svd(inst.m);
  CHECK(svd.s[2] > 1e-10);
  CHECK(svd.s[3] <= 1e-10);
}

TEST_CASE("full observation covers every entry") {
  const auto inst = synth_completion(4, 5, 2, 1.0, 6);
  CHECK(inst.omega.count() == 20);
  std::set<std::pair<Index, Index>> seen;
  for (Index t = 0; t < inst.omega.count(); ++t)
    seen.insert({inst.omega.rows[static_cast<std::size_t>(t)],
                 inst.omega.cols[static_cast<std::size_t>(t)]});
  CHECK(seen.size() == 20);
}

TEST_CASE("sampled covariance is positive semidefinite") {
  const Matrix sigma = synth_sparse_precision(12, 0.25, 77);
  CHECK(linalg::is_symmetric(sigma));
  CHECK(linalg::sym_eig(sigma).values.minCoeff() >= -1e-10);
}

TEST_CASE("generator shape validation") {
  CHECK_THROWS_AS(synth_lowrank_sparse(4, 4, 5, 0.1, 1), InvalidInputError);
  CHECK_THROWS_AS(synth_lowrank_sparse(4, 4, 2, 1.0, 1), InvalidInputError);
  CHECK_THROWS_AS(synth_completion(4, 4, 2, 0.0, 1), InvalidInputError);
  CHECK_THROWS_AS(synth_sparse_precision(0, 0.5, 1), InvalidInputError);
  CHECK_THROWS_AS(synth_basis_pursuit(10, 5, 2, 1), InvalidInputError);
  CHECK_THROWS_AS(synth_basis_pursuit(5, 10, 11, 1), InvalidInputError);
}
