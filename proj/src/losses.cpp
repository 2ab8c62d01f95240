// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ocsim/losses.hpp"

#include <algorithm>
#include <cmath>

namespace ocsim {

namespace detail {

double trace_loss_value(const Matrix& c_target, const Matrix& c_sim) {
  if (c_target.rows() != c_sim.rows() || c_target.cols() != c_sim.cols())
    throw DimensionMismatch("trace_loss: Choi dimension mismatch");
  const EigDecomposition eig = eig_hermitian(c_sim - c_target);
  return 0.5 * eig.eigenvalues.cwiseAbs().sum();
}

double fidelity_loss_value(const Matrix& c_target, const Matrix& c_sim) {
  if (c_target.rows() != c_sim.rows() || c_target.cols() != c_sim.cols())
    throw DimensionMismatch("fidelity_loss: Choi dimension mismatch");
  const Matrix root = matrix_function(c_target, MatrixFunc::Sqrt);
  const EigDecomposition eig = eig_hermitian(root * c_sim * root);
  double tr_sqrt = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    tr_sqrt += std::sqrt(std::max(eig.eigenvalues(i), 0.0));
  return std::max(0.0, 1.0 - tr_sqrt * tr_sqrt);
}

double loss_value(LossKind kind, const Matrix& c_target, const Matrix& c_sim) {
  return kind == LossKind::TraceDistance
             ? trace_loss_value(c_target, c_sim)
             : fidelity_loss_value(c_target, c_sim);
}

}  // namespace detail

double trace_loss(const ChoiMatrix& c_target, const ChoiMatrix& c_sim) {
  return detail::trace_loss_value(c_target.matrix(), c_sim.matrix());
}

double fidelity_loss(const ChoiMatrix& c_target, const ChoiMatrix& c_sim) {
  return detail::fidelity_loss_value(c_target.matrix(), c_sim.matrix());
}

LossEvaluation subgrad_trace(const ChoiMatrix& c_target,
                             const ProcessorMap& proc,
                             const DensityMatrix& pi) {
  if (pi.qubits() != proc.program_qubits())
    throw DimensionMismatch("subgrad_trace: program size mismatch");
  if (c_target.qubits() != proc.channel_qubits())
    throw DimensionMismatch("subgrad_trace: target size mismatch");
  const Matrix c_pi = proc.forward(pi.matrix());
  const EigDecomposition eig = eig_hermitian(c_pi - c_target.matrix());
  const Eigen::Index n = eig.eigenvalues.size();
  RealVector signs(n);
  double abs_sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    signs(i) = eig.eigenvalues(i) >= 0.0 ? 1.0 : -1.0;
    abs_sum += std::abs(eig.eigenvalues(i));
  }
  const Matrix sign_op =
      eig.eigenvectors * signs.asDiagonal() * eig.eigenvectors.adjoint();
  LossEvaluation out;
  out.value = 0.5 * abs_sum;
  out.subgradient = 0.5 * proc.dual(sign_op);
  out.hermitian_subgradient = hermitian_part(out.subgradient);
  return out;
}

LossEvaluation subgrad_fidelity(const ChoiMatrix& c_target,
                                const ProcessorMap& proc,
                                const DensityMatrix& pi, double eps) {
  if (pi.qubits() != proc.program_qubits())
    throw DimensionMismatch("subgrad_fidelity: program size mismatch");
  if (c_target.qubits() != proc.channel_qubits())
    throw DimensionMismatch("subgrad_fidelity: target size mismatch");
  const Matrix c_pi = proc.forward(pi.matrix());
  const Matrix root = matrix_function(c_target.matrix(), MatrixFunc::Sqrt);
  const EigDecomposition eig = eig_hermitian(root * c_pi * root);
  const Eigen::Index n = eig.eigenvalues.size();
  RealVector inv_sqrt(n);
  double tr_sqrt = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    tr_sqrt += std::sqrt(std::max(eig.eigenvalues(i), 0.0));
    inv_sqrt(i) = 1.0 / std::sqrt(std::max(eig.eigenvalues(i), eps));
  }
  const Matrix sandwich_inv =
      eig.eigenvectors * inv_sqrt.asDiagonal() * eig.eigenvectors.adjoint();
  const Matrix grad_sqrt_fid = proc.dual(root * sandwich_inv * root);
  LossEvaluation out;
  out.value = std::max(0.0, 1.0 - tr_sqrt * tr_sqrt);
  // sqrt(1 - loss) equals tr sqrt of the sandwiched operator.
  out.subgradient = -tr_sqrt * grad_sqrt_fid;
  out.hermitian_subgradient = hermitian_part(out.subgradient);
  return out;
}

LossEvaluation evaluate_loss(LossKind kind, const ChoiMatrix& c_target,
                             const ProcessorMap& proc, const DensityMatrix& pi,
                             double eps) {
  return kind == LossKind::TraceDistance
             ? subgrad_trace(c_target, proc, pi)
             : subgrad_fidelity(c_target, proc, pi, eps);
}

}  // namespace ocsim
