// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ocsim/megd.hpp"
#include "support.hpp"

using namespace ocsim;
using test::max_abs_diff;

namespace {

// Step-by-step form of the update, kept here purely as an oracle for the
// time-unrolled implementation: log of the current program, subtract the
// scaled subgradient, exponentiate, normalize.
Matrix recursive_step(const Matrix& pi, const Matrix& gtilde, double eta) {
  const Matrix z =
      matrix_function(pi, MatrixFunc::Log, 1e-12) - eta * gtilde;
  Matrix e = matrix_function(z, MatrixFunc::Exp);
  return e / e.trace().real();
}

}  // namespace

TEST_CASE("optimizer starts from the maximally mixed program") {
  const MegdState s(2, 0.01);
  CHECK(max_abs_diff(s.current_program().matrix(),
                     Matrix::Identity(4, 4) / 4.0) < 1e-14);
  CHECK(max_abs_diff(s.initial_log(),
                     -2.0 * std::numbers::ln2 * Matrix::Identity(4, 4)) <
        1e-14);
  CHECK(s.step_count() == 0);
  CHECK(s.grad_sum().cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(MegdState(2, 0.0), InvalidRate);
  CHECK_THROWS_AS(MegdState(2, -1.0), InvalidRate);
}

TEST_CASE("uniform shifts of the gradient sum cancel") {
  MegdState s(2, 0.5);
  s = s.step(Matrix(3.7 * Matrix::Identity(4, 4)));
  CHECK(max_abs_diff(s.current_program().matrix(),
                     Matrix::Identity(4, 4) / 4.0) < 1e-13);
}

TEST_CASE("one diagonal step has the closed form") {
  MegdState s(2, 0.01, 2.0);
  s = s.step(kron(pauli(3), pauli(3)));
  const double ep = std::exp(0.01), em = std::exp(-0.01);
  const double norm = 2.0 * ep + 2.0 * em;
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = em / norm;
  expected(1, 1) = ep / norm;
  expected(2, 2) = ep / norm;
  expected(3, 3) = em / norm;
  CHECK(max_abs_diff(s.current_program().matrix(), expected) < 1e-14);
}

TEST_CASE("zero subgradients leave the program unchanged") {
  SplitMix64 rng(51);
  MegdState s(2, 0.1);
  s = s.step(random_hermitian(4, rng));
  const Matrix before = s.current_program().matrix();
  s = s.step(Matrix(Matrix::Zero(4, 4)));
  CHECK(max_abs_diff(s.current_program().matrix(), before) < 1e-14);
}

TEST_CASE("opposite subgradients telescope back to the start") {
  SplitMix64 rng(52);
  const Matrix g = random_hermitian(4, rng);
  MegdState s(2, 0.3);
  s = s.step(g);
  s = s.step(Matrix(-g));
  CHECK(max_abs_diff(s.current_program().matrix(),
                     Matrix::Identity(4, 4) / 4.0) < 1e-13);
  CHECK(s.step_count() == 2);
}

TEST_CASE("unrolled and recursive updates agree over 150 steps") {
  SplitMix64 rng(53);
  MegdState s(2, 0.05);
  Matrix recursive = Matrix::Identity(4, 4) / 4.0;
  double worst = 0.0;
  for (int t = 0; t < 150; ++t) {
    Matrix g = random_hermitian(4, rng);
    g /= std::max(1.0, spectral_norm(g));
    s = s.step(g);
    recursive = recursive_step(recursive, g, 0.05);
    worst = std::max(worst,
                     max_abs_diff(s.current_program().matrix(), recursive));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("the stabilizing constant does not affect the program") {
  SplitMix64 rng(54);
  MegdState a(2, 0.05, 0.0);
  MegdState b(2, 0.05, 2.0);
  MegdState c(2, 0.05, 10.0);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Matrix g = random_hermitian(4, rng);
    a = a.step(g);
    b = b.step(g);
    c = c.step(g);
    const Matrix pa = a.current_program().matrix();
    worst = std::max(worst, max_abs_diff(pa, b.current_program().matrix()));
    worst = std::max(worst, max_abs_diff(pa, c.current_program().matrix()));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("every iterate stays strictly positive") {
  SplitMix64 rng(55);
  MegdState s(2, 0.2);
  for (int t = 0; t < 50; ++t) {
    s = s.step(random_hermitian(4, rng));
    const EigDecomposition eig =
        eig_hermitian(s.current_program().matrix());
    REQUIRE(eig.eigenvalues.minCoeff() > 0.0);
  }
}

TEST_CASE("step rejects mismatched dimensions") {
  const MegdState s(2, 0.1);
  CHECK_THROWS_AS(s.step(Matrix(Matrix::Identity(2, 2))), DimensionMismatch);
}

TEST_CASE("tuned learning rate formula") {
  CHECK(theoretical_eta({150, 1.0, 2}) == doctest::Approx(0.13596).epsilon(1e-3));
  CHECK(theoretical_eta({150, 2.0, 2}) ==
        doctest::Approx(0.5 * theoretical_eta({150, 1.0, 2})));
  CHECK(theoretical_eta({600, 1.0, 2}) ==
        doctest::Approx(0.5 * theoretical_eta({150, 1.0, 2})));
  CHECK_THROWS_AS(theoretical_eta({0, 1.0, 2}), InvalidInput);
  CHECK_THROWS_AS(theoretical_eta({10, 0.0, 2}), InvalidInput);
}

TEST_CASE("worst-case bound formula") {
  CHECK(regret_bound({150, 1.0, 2}) == doctest::Approx(20.393).epsilon(1e-3));
  CHECK(regret_bound({600, 1.0, 2}) ==
        doctest::Approx(2.0 * regret_bound({150, 1.0, 2})));
  CHECK(regret_bound({1, 1.0, 2}) == doctest::Approx(1.6651).epsilon(1e-3));
}

TEST_CASE("negative entropy values") {
  CHECK(std::abs(negative_entropy(DensityMatrix(2, bell_state(1).matrix()))) <
        1e-12);
  CHECK(negative_entropy(DensityMatrix::maximally_mixed(2)) ==
        doctest::Approx(-2.0 * std::numbers::ln2));
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.75;
  diag(1, 1) = 0.25;
  const double expected = 0.75 * std::log(0.75) + 0.25 * std::log(0.25);
  CHECK(negative_entropy(DensityMatrix(1, diag)) ==
        doctest::Approx(expected));
  CHECK(expected == doctest::Approx(-0.5623).epsilon(1e-3));
}

TEST_CASE("negative entropy stays in its range") {
  SplitMix64 rng(56);
  for (int rep = 0; rep < 200; ++rep) {
    const int qubits = 1 + rep % 2;
    const DensityMatrix pi = random_state(qubits, rng);
    const double f = negative_entropy(pi);
    REQUIRE(f <= 1e-12);
    REQUIRE(f >= -qubits * std::numbers::ln2 - 1e-12);
  }
}

TEST_CASE("relative entropy basics") {
  SplitMix64 rng(57);
  const DensityMatrix pi = random_state(2, rng);
  CHECK(std::abs(relative_entropy(pi, pi)) < 1e-10);

  // against the maximally mixed state the divergence is entropy plus n ln 2
  for (int rep = 0; rep < 100; ++rep) {
    const DensityMatrix p = random_state(2, rng);
    const double b = relative_entropy(p, DensityMatrix::maximally_mixed(2));
    REQUIRE(std::abs(b - (negative_entropy(p) + 2.0 * std::numbers::ln2)) <
            1e-10);
    REQUIRE(b <= 2.0 * std::numbers::ln2 + 1e-10);
  }
}

TEST_CASE("relative entropy of commuting states has the scalar form") {
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.75;
  diag(1, 1) = 0.25;
  const DensityMatrix second(1, diag);

  Matrix pure1 = Matrix::Zero(2, 2);
  pure1(1, 1) = 1.0;
  CHECK(relative_entropy(DensityMatrix(1, pure1), second) ==
        doctest::Approx(std::log(4.0)));  // -ln(1/4)

  Matrix pure0 = Matrix::Zero(2, 2);
  pure0(0, 0) = 1.0;
  CHECK(relative_entropy(DensityMatrix(1, pure0), second) ==
        doctest::Approx(-std::log(0.75)));
}

TEST_CASE("relative entropy is nonnegative and strongly convex") {
  SplitMix64 rng(58);
  for (int rep = 0; rep < 1000; ++rep) {
    const int qubits = 1 + rep % 2;
    const DensityMatrix a = random_state(qubits, rng);
    const DensityMatrix b = random_state(qubits, rng);
    const double div = relative_entropy(a, b);
    REQUIRE(div >= -1e-10);
    const double dist = trace_norm(a.matrix() - b.matrix());
    REQUIRE(div >= 0.5 * dist * dist - 1e-8);
  }
}

TEST_CASE("each step solves its regularized problem") {
  SplitMix64 rng(59);
  // zero subgradient: the minimizer is the current program itself
  {
    MegdState s(2, 0.1);
    LossEvaluation g;
    g.subgradient = Matrix::Zero(4, 4);
    g.hermitian_subgradient = Matrix::Zero(4, 4);
    CHECK(variational_certificate(s, g, 200, 1));
  }
  // random subgradients against random competitors
  for (int rep = 0; rep < 5; ++rep) {
    MegdState s(2, 0.1);
    for (int t = 0; t < rep; ++t) s = s.step(random_hermitian(4, rng));
    LossEvaluation g;
    g.subgradient = random_hermitian(4, rng);
    g.hermitian_subgradient = g.subgradient;
    CHECK(variational_certificate(s, g, 1000, 1000 + rep));
  }
}

TEST_CASE("perturbing the stepped program increases the objective") {
  SplitMix64 rng(60);
  MegdState s(2, 0.1);
  s = s.step(random_hermitian(4, rng));
  LossEvaluation g;
  g.subgradient = random_hermitian(4, rng);
  g.hermitian_subgradient = g.subgradient;

  const DensityMatrix pi_t = s.current_program();
  const DensityMatrix pi_next = s.step(g).current_program();
  const auto objective = [&](const Matrix& p) {
    return s.eta() * (p * g.hermitian_subgradient).trace().real() +
           relative_entropy(DensityMatrix(2, p), pi_t);
  };
  const double base = objective(pi_next.matrix());
  for (int rep = 0; rep < 20; ++rep) {
    Matrix dir = test::random_traceless_direction(4, rng);
    dir /= spectral_norm(dir);
    const double lam_min =
        eig_hermitian(pi_next.matrix()).eigenvalues.minCoeff();
    const Matrix perturbed = pi_next.matrix() + 0.5 * lam_min * dir;
    REQUIRE(objective(perturbed) > base);
  }
}
