// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ocsim/channels.hpp"

#include <cmath>
#include <utility>

namespace ocsim {

namespace {

Matrix make_pauli(int k) {
  Matrix m(2, 2);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw InvalidInput("pauli: index must be in 0..3");
  }
  return m;
}

Eigen::Index qubit_dim(int qubits) {
  if (qubits <= 0) throw InvalidInput("qubit count must be positive");
  return Eigen::Index(1) << qubits;
}

}  // namespace

const Matrix& pauli(int k) {
  static const Matrix ops[4] = {make_pauli(0), make_pauli(1), make_pauli(2),
                                make_pauli(3)};
  if (k < 0 || k > 3) throw InvalidInput("pauli: index must be in 0..3");
  return ops[k];
}

DensityMatrix::DensityMatrix(int qubits, Matrix m)
    : qubits_(qubits), m_(std::move(m)) {
  const Eigen::Index d = qubit_dim(qubits);
  if (m_.rows() != d || m_.cols() != d)
    throw DimensionMismatch("DensityMatrix: matrix does not match qubit count");
  if (!m_.allFinite()) throw NonFiniteInput("DensityMatrix: non-finite entry");
  if (!is_hermitian(m_, kHermitianTol))
    throw InvalidInput("DensityMatrix: matrix not Hermitian");
  if (std::abs(m_.trace().real() - 1.0) > kTraceTol ||
      std::abs(m_.trace().imag()) > kTraceTol)
    throw InvalidInput("DensityMatrix: trace not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m_,
                                               Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kPsdSlack)
    throw NotPsd("DensityMatrix: matrix not PSD");
}

DensityMatrix DensityMatrix::maximally_mixed(int qubits) {
  const Eigen::Index d = qubit_dim(qubits);
  return DensityMatrix(qubits,
                       Matrix::Identity(d, d) / static_cast<double>(d));
}

QuantumChannel::QuantumChannel(int in_qubits, int out_qubits,
                               std::vector<Matrix> kraus)
    : in_qubits_(in_qubits), out_qubits_(out_qubits), kraus_(std::move(kraus)) {
  const Eigen::Index din = qubit_dim(in_qubits);
  const Eigen::Index dout = qubit_dim(out_qubits);
  if (kraus_.empty()) throw InvalidInput("QuantumChannel: no Kraus operators");
  Matrix completeness = Matrix::Zero(din, din);
  for (const Matrix& a : kraus_) {
    if (a.rows() != dout || a.cols() != din)
      throw DimensionMismatch("QuantumChannel: Kraus operator shape mismatch");
    if (!a.allFinite())
      throw NonFiniteInput("QuantumChannel: non-finite Kraus entry");
    completeness += a.adjoint() * a;
  }
  if ((completeness - Matrix::Identity(din, din)).cwiseAbs().maxCoeff() >
      kPsdSlack)
    throw InvalidInput("QuantumChannel: Kraus operators not trace preserving");
}

Matrix QuantumChannel::apply_to_matrix(const Matrix& m) const {
  const Eigen::Index din = qubit_dim(in_qubits_);
  if (m.rows() != din || m.cols() != din)
    throw DimensionMismatch("apply_to_matrix: input dimension mismatch");
  const Eigen::Index dout = qubit_dim(out_qubits_);
  Matrix out = Matrix::Zero(dout, dout);
  for (const Matrix& a : kraus_) out += a * m * a.adjoint();
  return out;
}

DensityMatrix bell_state(int n) {
  if (n <= 0) throw InvalidInput("bell_state: n must be positive");
  if (n > 3) throw TooLarge("bell_state: n must be at most 3");
  const Eigen::Index d = Eigen::Index(1) << n;
  Vector psi = Vector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index i = 0; i < d; ++i) psi(i * d + i) = amp;
  return DensityMatrix(2 * n, psi * psi.adjoint());
}

DensityMatrix apply_channel(const QuantumChannel& ch,
                            const DensityMatrix& rho) {
  if (rho.qubits() != ch.in_qubits())
    throw DimensionMismatch("apply_channel: state does not match channel input");
  return DensityMatrix(ch.out_qubits(), ch.apply_to_matrix(rho.matrix()));
}

ChoiMatrix::ChoiMatrix(int qubits, Matrix m)
    : qubits_(qubits), m_(std::move(m)) {
  const Eigen::Index d = qubit_dim(qubits);
  if (m_.rows() != d * d || m_.cols() != d * d)
    throw DimensionMismatch("ChoiMatrix: matrix does not match qubit count");
  if (!m_.allFinite()) throw NonFiniteInput("ChoiMatrix: non-finite entry");
  if (!is_hermitian(m_, kHermitianTol))
    throw InvalidInput("ChoiMatrix: matrix not Hermitian");
  if (std::abs(m_.trace().real() - 1.0) > kTraceTol)
    throw InvalidInput("ChoiMatrix: trace not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kPsdSlack)
    throw NotPsd("ChoiMatrix: matrix not PSD");
  // Trace-preservation witness: discarding the channel output must leave the
  // reference side maximally mixed.
  const Matrix reduced = partial_trace(m_, d, d, TraceSide::Last);
  if ((reduced - Matrix::Identity(d, d) / static_cast<double>(d))
          .cwiseAbs()
          .maxCoeff() > kPsdSlack)
    throw InvalidInput("ChoiMatrix: reduced reference state not maximally mixed");
}

ChoiMatrix choi_of_channel(const QuantumChannel& ch) {
  if (ch.in_qubits() != ch.out_qubits())
    throw DimensionMismatch(
        "choi_of_channel: only square channels have a Choi matrix here");
  const int n = ch.in_qubits();
  const Eigen::Index d = Eigen::Index(1) << n;
  const Matrix bell = bell_state(n).matrix();
  const Matrix eye = Matrix::Identity(d, d);
  Matrix choi = Matrix::Zero(d * d, d * d);
  for (const Matrix& a : ch.kraus()) {
    const Matrix lifted = kron(eye, a);
    choi += lifted * bell * lifted.adjoint();
  }
  return ChoiMatrix(n, hermitian_part(choi));
}

QuantumChannel dephasing_channel(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ProbabilityOutOfRange("dephasing_channel: p must be in [0, 1]");
  std::vector<Matrix> kraus;
  kraus.push_back(std::sqrt(1.0 - p) * pauli(0));
  kraus.push_back(std::sqrt(p) * pauli(3));
  return QuantumChannel(1, 1, std::move(kraus));
}

QuantumChannel pauli_channel(double p_x, double p_y, double p_z) {
  if (!(p_x >= 0.0 && p_y >= 0.0 && p_z >= 0.0 && p_x + p_y + p_z <= 1.0))
    throw ProbabilityOutOfRange(
        "pauli_channel: weights must be nonnegative and sum to at most 1");
  std::vector<Matrix> kraus;
  kraus.push_back(std::sqrt(1.0 - p_x - p_y - p_z) * pauli(0));
  kraus.push_back(std::sqrt(p_x) * pauli(1));
  kraus.push_back(std::sqrt(p_y) * pauli(2));
  kraus.push_back(std::sqrt(p_z) * pauli(3));
  return QuantumChannel(1, 1, std::move(kraus));
}

DensityMatrix random_state(int qubits, SplitMix64& rng) {
  return DensityMatrix(qubits, random_density(qubit_dim(qubits), rng));
}

QuantumChannel random_channel(int qubits, int n_kraus, SplitMix64& rng) {
  if (n_kraus <= 0) throw InvalidInput("random_channel: need Kraus operators");
  const Eigen::Index d = qubit_dim(qubits);
  // Random isometry V : C^d -> C^(d * n_kraus) via QR; the Kraus operators
  // are its d x d blocks.
  Matrix g(d * n_kraus, d);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix q = Matrix(qr.householderQ()).leftCols(d);
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(n_kraus));
  for (int k = 0; k < n_kraus; ++k)
    kraus.push_back(q.block(k * d, 0, d, d));
  return QuantumChannel(qubits, qubits, std::move(kraus));
}

}  // namespace ocsim
