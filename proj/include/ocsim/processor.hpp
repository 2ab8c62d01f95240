// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include "ocsim/channels.hpp"

namespace ocsim {

/// Abstract programmable processor: the linear CP map taking a program state
/// to the Choi matrix of the channel the processor simulates, together with
/// its adjoint.
///
/// The forward/dual pair satisfies tr(forward(pi) X) = tr(pi dual(X)) for all
/// Hermitian X. Both maps accept raw matrices so they can be applied to
/// arbitrary Hermitian operators (subgradient terms), not just states. The
/// interface allows rectangular processors whose program dimension differs
/// from the Choi dimension, although the only shipped implementation is
/// square.
class ProcessorMap {
 public:
  virtual ~ProcessorMap() = default;

  virtual int program_qubits() const = 0;
  virtual int channel_qubits() const = 0;

  /// Choi matrix (as a raw matrix) of the channel simulated under program pi.
  virtual Matrix forward(const Matrix& pi) const = 0;

  /// Adjoint of forward with respect to the Hilbert-Schmidt inner product.
  virtual Matrix dual(const Matrix& x) const = 0;

  /// forward() with type-level validation of input and output.
  ChoiMatrix simulate_choi(const DensityMatrix& pi) const;
};

/// Generalized teleportation processor on one input qubit and a two-qubit
/// program state.
///
/// A Bell measurement acts on the input qubit and the first program qubit;
/// the outcome selects a Pauli correction on the second program qubit, which
/// carries the output. Outcome/correction pairing follows the standard Bell
/// conventions: Phi+ -> I, Psi+ -> X, Psi- -> Y, Phi- -> Z.
///
/// The induced program -> Choi map is the Pauli twirl
///   forward(pi) = 1/4 sum_k (V_k' (x) V_k) pi (V_k' (x) V_k)',
/// which is self-dual, unital and trace preserving.
class GtpProcessor final : public ProcessorMap {
 public:
  GtpProcessor();

  int program_qubits() const override { return 2; }
  int channel_qubits() const override { return 1; }
  Matrix forward(const Matrix& pi) const override;
  Matrix dual(const Matrix& x) const override;

  const std::array<Matrix, 4>& bell_projectors() const { return projectors_; }
  const std::array<Matrix, 4>& corrections() const { return corrections_; }

 private:
  std::array<Matrix, 4> projectors_;
  std::array<Matrix, 4> corrections_;
  std::array<Matrix, 4> twirl_ops_;  // V_k' (x) V_k
};

/// Program -> Choi map of the GTP.
ChoiMatrix gtp_lambda(const DensityMatrix& pi);

/// Adjoint of gtp_lambda (identical formula; the twirl is self-dual).
Matrix gtp_lambda_dual(const Matrix& x);

/// Circuit-level simulation: Bell measurement, outcome-conditioned Pauli
/// correction, then discarding everything but the output qubit.
DensityMatrix gtp_apply(const DensityMatrix& rho, const DensityMatrix& pi);

/// Choi matrix of the channel rho -> gtp_apply(rho, pi), assembled from the
/// circuit-level map. Agrees with gtp_lambda(pi); the two routes
/// cross-validate each other.
ChoiMatrix choi_of_simulated(const DensityMatrix& pi);

/// The Choi matrix of a single-qubit channel reinterpreted as a program
/// state. For teleportation-covariant channels (all Pauli channels) this
/// program simulates the channel exactly; for other channels it need not.
DensityMatrix exact_program_for(const QuantumChannel& ch);

}  // namespace ocsim
