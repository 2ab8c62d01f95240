// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ocsim/megd.hpp"

#include <cmath>
#include <numbers>

namespace ocsim {

MegdState::MegdState(int program_qubits, double eta, double d_const)
    : program_qubits_(program_qubits),
      eta_(eta),
      d_const_(d_const),
      step_count_(0) {
  if (program_qubits <= 0)
    throw InvalidInput("MegdState: program_qubits must be positive");
  if (!(eta > 0.0)) throw InvalidRate("MegdState: eta must be positive");
  const Eigen::Index d = Eigen::Index(1) << program_qubits;
  grad_sum_ = Matrix::Zero(d, d);
  initial_log_ = -std::log(static_cast<double>(d)) * Matrix::Identity(d, d);
}

DensityMatrix MegdState::current_program() const {
  const Eigen::Index d = dim();
  const Matrix z = d_const_ * Matrix::Identity(d, d) + initial_log_ -
                   eta_ * grad_sum_;
  const EigDecomposition eig = eig_hermitian(z);
  // Normalized exponential computed softmax-style; the shift by the top
  // eigenvalue keeps exp() in range and is where the d constant cancels.
  const double shift = eig.eigenvalues.maxCoeff();
  RealVector w(d);
  for (Eigen::Index i = 0; i < d; ++i)
    w(i) = std::exp(eig.eigenvalues(i) - shift);
  w /= w.sum();
  const Matrix rho = eig.eigenvectors * w.asDiagonal() *
                     eig.eigenvectors.adjoint();
  return DensityMatrix(program_qubits_, hermitian_part(rho));
}

MegdState MegdState::step(const Matrix& hermitian_subgradient) const {
  if (hermitian_subgradient.rows() != dim() ||
      hermitian_subgradient.cols() != dim())
    throw DimensionMismatch("MegdState::step: subgradient dimension mismatch");
  MegdState next = *this;
  next.grad_sum_ += hermitian_part(hermitian_subgradient);
  next.step_count_ += 1;
  return next;
}

namespace {

void check_bound_inputs(const RegretBoundInputs& b) {
  if (b.horizon <= 0 || !(b.grad_bound > 0.0) || b.program_qubits <= 0)
    throw InvalidInput("regret bound inputs must be positive");
}

}  // namespace

double theoretical_eta(const RegretBoundInputs& b) {
  check_bound_inputs(b);
  return std::sqrt(2.0 * std::numbers::ln2 * b.program_qubits /
                   (b.horizon * b.grad_bound * b.grad_bound));
}

double regret_bound(const RegretBoundInputs& b) {
  check_bound_inputs(b);
  return b.grad_bound *
         std::sqrt(2.0 * std::numbers::ln2 * b.program_qubits * b.horizon);
}

double negative_entropy(const DensityMatrix& pi) {
  const EigDecomposition eig = eig_hermitian(pi.matrix());
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lam = eig.eigenvalues(i);
    if (lam > 0.0) sum += lam * std::log(lam);
  }
  return sum;
}

double relative_entropy(const DensityMatrix& pi1, const DensityMatrix& pi2,
                        double eps) {
  if (pi1.dim() != pi2.dim())
    throw DimensionMismatch("relative_entropy: dimension mismatch");
  const Matrix log2nd = matrix_function(pi2.matrix(), MatrixFunc::Log, eps);
  const double cross = (pi1.matrix() * log2nd).trace().real();
  return negative_entropy(pi1) - cross;
}

bool variational_certificate(const MegdState& s_before,
                             const LossEvaluation& g, int trials,
                             std::uint64_t seed) {
  const DensityMatrix pi_t = s_before.current_program();
  const DensityMatrix pi_next = s_before.step(g).current_program();
  const Matrix& gt = g.hermitian_subgradient;
  const auto objective = [&](const DensityMatrix& p) {
    return s_before.eta() * (p.matrix() * gt).trace().real() +
           relative_entropy(p, pi_t);
  };
  const double stepped = objective(pi_next);
  SplitMix64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    const DensityMatrix candidate =
        DensityMatrix(s_before.program_qubits(),
                      random_density(s_before.dim(), rng));
    if (objective(candidate) < stepped - 1e-10) return false;
  }
  return true;
}

}  // namespace ocsim
