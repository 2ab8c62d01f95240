// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ocsim/processor.hpp"

#include <cmath>

namespace ocsim {

namespace {

Vector bell_vector(int k) {
  // |Phi+>, |Psi+>, |Psi->, |Phi-> in the computational basis {00,01,10,11}.
  Vector v = Vector::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  switch (k) {
    case 0: v(0) = s; v(3) = s; break;
    case 1: v(1) = s; v(2) = s; break;
    case 2: v(1) = s; v(2) = -s; break;
    case 3: v(0) = s; v(3) = -s; break;
    default: throw InvalidInput("bell_vector: index must be in 0..3");
  }
  return v;
}

// Linear extension of the circuit-level GTP map to arbitrary 2x2 inputs;
// needed to assemble Choi matrices column by column.
Matrix gtp_apply_matrix(const Matrix& m, const Matrix& pi,
                        const GtpProcessor& proc) {
  const Matrix joint = kron(m, pi);  // input (x) program, 8x8
  const Matrix eye2 = Matrix::Identity(2, 2);
  Matrix out = Matrix::Zero(2, 2);
  for (int k = 0; k < 4; ++k) {
    const Matrix projector = kron(proc.bell_projectors()[k], eye2);
    const Matrix measured = projector * joint * projector;
    // Measured qubits (input + first program qubit) form the leading factor.
    const Matrix reduced = partial_trace(measured, 2, 4, TraceSide::First);
    const Matrix& v = proc.corrections()[k];
    out += v * reduced * v.adjoint();
  }
  return out;
}

const GtpProcessor& shared_gtp() {
  static const GtpProcessor proc;
  return proc;
}

}  // namespace

ChoiMatrix ProcessorMap::simulate_choi(const DensityMatrix& pi) const {
  if (pi.qubits() != program_qubits())
    throw DimensionMismatch("simulate_choi: program size mismatch");
  return ChoiMatrix(channel_qubits(), forward(pi.matrix()));
}

GtpProcessor::GtpProcessor() {
  for (int k = 0; k < 4; ++k) {
    const Vector v = bell_vector(k);
    projectors_[k] = v * v.adjoint();
    corrections_[k] = pauli(k);
    twirl_ops_[k] = kron(pauli(k).adjoint(), pauli(k));
  }
}

Matrix GtpProcessor::forward(const Matrix& pi) const {
  if (pi.rows() != 4 || pi.cols() != 4)
    throw DimensionMismatch("GtpProcessor::forward: expected a 4x4 matrix");
  Matrix out = Matrix::Zero(4, 4);
  for (const Matrix& t : twirl_ops_) out += t * pi * t.adjoint();
  return 0.25 * out;
}

Matrix GtpProcessor::dual(const Matrix& x) const {
  // The Pauli twirl is its own adjoint.
  return forward(x);
}

ChoiMatrix gtp_lambda(const DensityMatrix& pi) {
  return shared_gtp().simulate_choi(pi);
}

Matrix gtp_lambda_dual(const Matrix& x) { return shared_gtp().dual(x); }

DensityMatrix gtp_apply(const DensityMatrix& rho, const DensityMatrix& pi) {
  if (rho.qubits() != 1)
    throw DimensionMismatch("gtp_apply: input must be one qubit");
  if (pi.qubits() != 2)
    throw DimensionMismatch("gtp_apply: program must be two qubits");
  return DensityMatrix(
      1, hermitian_part(gtp_apply_matrix(rho.matrix(), pi.matrix(),
                                         shared_gtp())));
}

ChoiMatrix choi_of_simulated(const DensityMatrix& pi) {
  if (pi.qubits() != 2)
    throw DimensionMismatch("choi_of_simulated: program must be two qubits");
  const GtpProcessor& proc = shared_gtp();
  Matrix choi = Matrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Matrix unit = Matrix::Zero(2, 2);
      unit(i, j) = 1.0;
      choi += 0.5 * kron(unit, gtp_apply_matrix(unit, pi.matrix(), proc));
    }
  }
  return ChoiMatrix(1, hermitian_part(choi));
}

DensityMatrix exact_program_for(const QuantumChannel& ch) {
  if (ch.in_qubits() != 1 || ch.out_qubits() != 1)
    throw DimensionMismatch("exact_program_for: expected a one-qubit channel");
  return DensityMatrix(2, choi_of_channel(ch).matrix());
}

}  // namespace ocsim
