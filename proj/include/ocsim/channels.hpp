// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "ocsim/linalg.hpp"

namespace ocsim {

/// Pauli operator sigma_k for k in {0,1,2,3} = {I, X, Y, Z}.
const Matrix& pauli(int k);

/// PSD, unit-trace Hermitian matrix on `qubits` qubits.
///
/// The constructor validates Hermiticity, positivity (up to a small negative
/// slack) and unit trace; instances are immutable values afterwards.
class DensityMatrix {
 public:
  DensityMatrix(int qubits, Matrix m);

  int qubits() const { return qubits_; }
  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

  /// Maximally mixed state I / 2^qubits.
  static DensityMatrix maximally_mixed(int qubits);

 private:
  int qubits_;
  Matrix m_;
};

/// CPTP map in Kraus form. Operators have shape 2^out_qubits x 2^in_qubits
/// and satisfy the completeness relation sum_i A_i' A_i = I.
class QuantumChannel {
 public:
  QuantumChannel(int in_qubits, int out_qubits, std::vector<Matrix> kraus);

  int in_qubits() const { return in_qubits_; }
  int out_qubits() const { return out_qubits_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  /// Action on an arbitrary (not necessarily Hermitian) matrix; the linear
  /// extension sum_i A m A' used when assembling Choi matrices.
  Matrix apply_to_matrix(const Matrix& m) const;

 private:
  int in_qubits_;
  int out_qubits_;
  std::vector<Matrix> kraus_;
};

/// PSD unit-trace matrix on 2n qubits characterizing a channel on n qubits.
///
/// Qubit ordering convention: the first n qubits are the reference (identity)
/// side and the last n qubits the channel output. Under this convention
/// trace-preservation shows up as the reduced state over the output factor
/// being maximally mixed, which the constructor checks.
class ChoiMatrix {
 public:
  ChoiMatrix(int qubits, Matrix m);

  int qubits() const { return qubits_; }
  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

 private:
  int qubits_;
  Matrix m_;
};

/// Maximally entangled state on 2n qubits, 1/sqrt(2^n) sum_i |i>|i>.
DensityMatrix bell_state(int n);

/// sum_i A rho A'.
DensityMatrix apply_channel(const QuantumChannel& ch, const DensityMatrix& rho);

/// Choi matrix of a channel: the channel applied to the second half of the
/// maximally entangled state. Requires in_qubits == out_qubits.
ChoiMatrix choi_of_channel(const QuantumChannel& ch);

/// Single-qubit dephasing: rho -> (1-p) rho + p Z rho Z.
QuantumChannel dephasing_channel(double p);

/// Single-qubit Pauli channel with flip weights (p_x, p_y, p_z).
QuantumChannel pauli_channel(double p_x, double p_y, double p_z);

/// Random full-rank state on `qubits` qubits.
DensityMatrix random_state(int qubits, SplitMix64& rng);

/// Random CPTP channel with `n_kraus` Kraus operators drawn from a random
/// Stinespring isometry. With n_kraus = 4 on one qubit the Choi matrix is
/// full rank almost surely.
QuantumChannel random_channel(int qubits, int n_kraus, SplitMix64& rng);

}  // namespace ocsim
