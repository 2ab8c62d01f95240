// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "ocsim/channels.hpp"
#include "ocsim/losses.hpp"

namespace ocsim {

/// Online optimizer state for matrix exponentiated gradient descent over
/// density matrices.
///
/// The program is stored in time-unrolled form: with accumulated Hermitian
/// subgradients G = sum_tau g_tau, the current program is
///   exp(Z) / tr(exp(Z)),   Z = d I + log(pi_1) - eta G,
/// starting from the maximally mixed pi_1. The constant d cancels in the
/// normalized exponential; it is kept as a configurable stabilizer. Unrolling
/// avoids repeated log/exp round trips of the recursive update.
///
/// MegdState is an immutable value: step() returns a new state.
class MegdState {
 public:
  MegdState(int program_qubits, double eta, double d_const = 2.0);

  int program_qubits() const { return program_qubits_; }
  Eigen::Index dim() const { return grad_sum_.rows(); }
  double eta() const { return eta_; }
  double d_const() const { return d_const_; }
  int step_count() const { return step_count_; }
  const Matrix& grad_sum() const { return grad_sum_; }
  const Matrix& initial_log() const { return initial_log_; }

  /// Program implied by the accumulated subgradients.
  DensityMatrix current_program() const;

  /// State after absorbing one Hermitian subgradient.
  MegdState step(const Matrix& hermitian_subgradient) const;
  MegdState step(const LossEvaluation& g) const {
    return step(g.hermitian_subgradient);
  }

 private:
  int program_qubits_;
  double eta_;
  double d_const_;
  int step_count_;
  Matrix grad_sum_;
  Matrix initial_log_;
};

/// Inputs of the worst-case performance guarantee.
struct RegretBoundInputs {
  int horizon = 0;            // T
  double grad_bound = 0.0;    // spectral-norm bound on the subgradients
  int program_qubits = 0;     // n_pi
};

/// Learning rate sqrt(2 ln(2) n_pi / (T L^2)) minimizing the worst-case
/// regret bound.
double theoretical_eta(const RegretBoundInputs& b);

/// Worst-case regret bound L sqrt(2 ln(2) n_pi T) at the rate above.
double regret_bound(const RegretBoundInputs& b);

/// Negative von Neumann entropy tr(pi ln pi), the mirror map of the
/// optimizer. Lies in [-n_pi ln 2, 0]; zero eigenvalues contribute zero.
double negative_entropy(const DensityMatrix& pi);

/// Quantum relative entropy tr(pi1 ln pi1 - pi1 ln pi2), the Bregman
/// divergence generated by negative_entropy. eps floors the eigenvalues
/// inside ln(pi2). Nonnegative, zero iff pi1 == pi2.
double relative_entropy(const DensityMatrix& pi1, const DensityMatrix& pi2,
                        double eps = kLogFloor);

/// Checks numerically that one optimizer step solves its regularized
/// minimization problem: the objective
///   eta tr(pi g) + relative_entropy(pi, current)
/// evaluated at the stepped program must not exceed the objective at any of
/// `trials` random density matrices.
bool variational_certificate(const MegdState& s_before,
                             const LossEvaluation& g, int trials,
                             std::uint64_t seed = 0);

}  // namespace ocsim
