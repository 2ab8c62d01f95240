// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ocsim/processor.hpp"

namespace ocsim {

enum class LossKind { TraceDistance, Infidelity };

/// Loss value together with its subgradient with respect to the program
/// state. hermitian_subgradient is the Hermitian part of subgradient and is
/// what the optimizer consumes.
struct LossEvaluation {
  double value = 0.0;
  Matrix subgradient;
  Matrix hermitian_subgradient;
};

/// Trace distance between Choi matrices, (1/2) ||C_target - C_sim||_tr.
double trace_loss(const ChoiMatrix& c_target, const ChoiMatrix& c_sim);

/// Squared-fidelity complement between Choi matrices,
/// 1 - (tr sqrt(sqrt(C_target) C_sim sqrt(C_target)))^2.
double fidelity_loss(const ChoiMatrix& c_target, const ChoiMatrix& c_sim);

/// Trace-distance loss at program pi and its subgradient
///   (1/2) dual(sum_i sign(lambda_i) E_i),
/// where sum_i lambda_i E_i is the eigendecomposition of the error operator
/// forward(pi) - C_target and sign(0) = +1.
LossEvaluation subgrad_trace(const ChoiMatrix& c_target,
                             const ProcessorMap& proc,
                             const DensityMatrix& pi);

/// Infidelity loss at program pi and its gradient
///   -sqrt(1 - loss) dual(sqrt(C) (sqrt(C) forward(pi) sqrt(C))^(-1/2) sqrt(C)).
/// eps floors the eigenvalues inside the inverse square root, acting as a
/// pseudo-inverse on the support when C_target is rank deficient.
LossEvaluation subgrad_fidelity(const ChoiMatrix& c_target,
                                const ProcessorMap& proc,
                                const DensityMatrix& pi, double eps = 1e-10);

/// Dispatch on the loss kind.
LossEvaluation evaluate_loss(LossKind kind, const ChoiMatrix& c_target,
                             const ProcessorMap& proc, const DensityMatrix& pi,
                             double eps = 1e-10);

namespace detail {

// Raw-matrix versions used in inner loops, skipping type re-validation.
double trace_loss_value(const Matrix& c_target, const Matrix& c_sim);
double fidelity_loss_value(const Matrix& c_target, const Matrix& c_sim);
double loss_value(LossKind kind, const Matrix& c_target, const Matrix& c_sim);

}  // namespace detail

}  // namespace ocsim
