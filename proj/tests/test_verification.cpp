#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sensornet/cli.hpp"
#include "sensornet/error.hpp"
#include "sensornet/generator.hpp"
#include "sensornet/random.hpp"
#include "sensornet/verification.hpp"

using namespace sensornet;

namespace {

Index dense_rank(const NumericMatrix& m, double tol = 1e-8) {
  Eigen::JacobiSVD<NumericMatrix> svd(m);
  const auto& s = svd.singularValues();
  Index r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > tol * s(0)) ++r;
  return r;
}

ProblemInstance two_parent_instance() {
  ProblemInstance inst;
  inst.n = 2;
  inst.m = 2;
  inst.system_pattern = StructuredMatrix::identity(2);
  inst.sensing_cost = {{{0, 0}, 1}, {{1, 1}, 1}};
  inst.network = WeightedDigraph(2, {{{0, 1}, 1}, {{1, 0}, 1}});
  return inst;
}

}  // namespace

TEST_CASE("realize_numeric") {
  const auto pattern = StructuredMatrix(3, 3, {{0, 0}, {1, 2}, {2, 1}});
  const auto a = realize_numeric(pattern, 42);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) {
      if (pattern.contains(i, j)) {
        CHECK(a(i, j) >= 0.5);
        CHECK(a(i, j) <= 1.5);
      } else {
        CHECK(a(i, j) == 0.0);
      }
    }
  CHECK(a == realize_numeric(pattern, 42));
  CHECK(a != realize_numeric(pattern, 43));
}

TEST_CASE("make_row_stochastic") {
  CHECK(make_row_stochastic(StructuredMatrix(1, 1, {}), 1) == NumericMatrix::Ones(1, 1));
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const Index m = 1 + trial % 6;
    const auto w = make_row_stochastic(oracle::random_pattern(rng, m, m, 0.4), trial);
    for (Index i = 0; i < m; ++i) {
      CHECK(w.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(w(i, i) > 0.0);
    }
  }
}

TEST_CASE("build_DH") {
  NumericMatrix h(2, 2);
  h << 1, 0, 0, 1;
  NumericMatrix expected = NumericMatrix::Zero(4, 4);
  expected(0, 0) = 1;
  expected(3, 3) = 1;
  CHECK(build_DH(h) == expected);

  NumericMatrix scalar(1, 1);
  scalar << 3;
  CHECK(build_DH(scalar)(0, 0) == 9.0);

  const auto dh = build_DH(StructuredMatrix(3, 4, {{0, 1}, {1, 3}, {2, 1}}), 7);
  CHECK(dh.isApprox(dh.transpose()));
  Eigen::SelfAdjointEigenSolver<NumericMatrix> eig(dh);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-12);
  CHECK(dense_rank(dh) == 3);

  CHECK_THROWS_AS(build_DH(StructuredMatrix(2, 2, {{0, 0}, {0, 1}, {1, 1}}), 1), Error);
  CHECK_THROWS_AS(build_DH(StructuredMatrix(2, 2, {{0, 0}}), 1), Error);
}

TEST_CASE("kalman_rank_observable examples") {
  NumericMatrix a1(1, 1), c1(1, 1);
  a1 << 2;
  c1 << 1;
  auto r = kalman_rank_observable(a1, c1);
  CHECK(r.observable);
  CHECK(r.rank == 1);

  NumericMatrix a2(2, 2), c2(1, 2);
  a2 << 1, 0, 0, 2;
  c2 << 1, 0;
  r = kalman_rank_observable(a2, c2);
  CHECK_FALSE(r.observable);
  CHECK(r.rank == 1);

  NumericMatrix zero_c = NumericMatrix::Zero(1, 2);
  CHECK(kalman_rank_observable(a2, zero_c).rank == 0);
}

TEST_CASE("subspace expansion agrees with the explicit observability matrix") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 1 + trial % 6;
    const auto a = realize_numeric(oracle::random_pattern(rng, n, n, 0.35), rng());
    const auto c = realize_numeric(oracle::random_pattern(rng, 1 + trial % 2, n, 0.4), rng());
    NumericMatrix obs(c.rows() * n, n);
    NumericMatrix power = NumericMatrix::Identity(n, n);
    for (Index k = 0; k < n; ++k) {
      obs.middleRows(k * c.rows(), c.rows()) = c * power;
      power = power * a;
    }
    const Index expected = c.isZero() ? 0 : dense_rank(obs);
    CHECK(kalman_rank_observable(a, c).rank == expected);
  }

  // Realized 3-cycle with one measured state.
  const auto cycle = StructuredMatrix(3, 3, {{1, 0}, {2, 1}, {0, 2}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = realize_numeric(cycle, seed);
    NumericMatrix c = NumericMatrix::Zero(1, 3);
    c(0, 0) = 1;
    CHECK(kalman_rank_observable(a, c).observable);
  }
}

TEST_CASE("kronecker operator equals the dense product") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Index m = 1 + trial % 4, n = 1 + trial % 5;
    const auto w = make_row_stochastic(oracle::random_pattern(rng, m, m, 0.5), rng());
    const auto a = realize_numeric(oracle::random_pattern(rng, n, n, 0.5), rng());
    NumericMatrix dense(m * n, m * n);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) dense.block(i * n, j * n, n, n) = w(i, j) * a;
    const NumericMatrix q = NumericMatrix::Random(3, m * n);
    CHECK((kronecker_operator(w, a)(q) - q * dense).norm() < 1e-12);
  }
}

TEST_CASE("adding measured rows never lowers the rank") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + trial % 5;
    const auto a = realize_numeric(oracle::random_pattern(rng, n, n, 0.3), rng());
    NumericMatrix c = NumericMatrix::Zero(1, n);
    c(0, rng() % n) = 1;
    const Index before = kalman_rank_observable(a, c).rank;
    NumericMatrix more(2, n);
    more << c, NumericMatrix::Zero(1, n);
    more(1, rng() % n) = 1;
    CHECK(kalman_rank_observable(a, more).rank >= before);
  }
}

TEST_CASE("verify_design_numeric") {
  SUBCASE("scalar system passes") {
    ProblemInstance inst;
    inst.n = 1;
    inst.m = 1;
    inst.system_pattern = StructuredMatrix::identity(1);
    inst.sensing_cost = {{{0, 0}, 1}};
    inst.network = WeightedDigraph(1);
    const auto design = design_pipeline(inst);
    const auto report = verify_design_numeric(inst, design, 10, 5);
    CHECK(report.passes == 10);
    CHECK(report.rank_deficits.empty());
  }
  SUBCASE("two parents with a bidirectional link pass") {
    const auto inst = two_parent_instance();
    const auto report = verify_design_numeric(inst, design_pipeline(inst), 50, 9);
    CHECK(report.passes == 50);
  }
  SUBCASE("gate refusal carries the reason") {
    const auto inst = two_parent_instance();
    auto design = design_pipeline(inst);
    design.network_pattern = StructuredMatrix(2, 2, {{0, 1}});
    try {
      verify_design_numeric(inst, design, 5, 1);
      FAIL("expected refusal");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::precondition);
      CHECK(std::string(e.what()).find("not strongly connected") != std::string::npos);
    }
  }
  SUBCASE("zero trials rejected") {
    const auto inst = two_parent_instance();
    CHECK_THROWS_AS(verify_design_numeric(inst, design_pipeline(inst), 0, 1), Error);
  }
}

TEST_CASE("one-way link between two parent sensors is rank deficient") {
  const auto a = StructuredMatrix::identity(2);
  const auto h = StructuredMatrix(2, 2, {{0, 0}, {1, 1}});
  for (const auto& w : {StructuredMatrix(2, 2, {{0, 1}}), StructuredMatrix(2, 2, {{1, 0}})}) {
    for (std::uint64_t t = 0; t < 50; ++t) CHECK(distributed_rank_deficit(a, h, w, t) >= 1);
  }
}

TEST_CASE("implicit and dense Kronecker paths agree above the dense limit") {
  GeneratorConfig cfg;
  cfg.n = 30;
  cfg.m = 15;
  cfg.seed = 4;
  const auto inst = generate_instance(cfg);
  const auto design = design_pipeline(inst);
  REQUIRE(inst.n * inst.m > kDenseKroneckerLimit);
  const auto report = verify_design_numeric(inst, design, 2, 3);
  CHECK(report.passes == 2);
}

TEST_CASE("derive_seed separates streams") {
  CHECK(derive_seed(1, "A", 0) == derive_seed(1, "A", 0));
  CHECK(derive_seed(1, "A", 0) != derive_seed(1, "W", 0));
  CHECK(derive_seed(1, "A", 0) != derive_seed(1, "A", 1));
  CHECK(derive_seed(1, "A", 0) != derive_seed(2, "A", 0));
}
