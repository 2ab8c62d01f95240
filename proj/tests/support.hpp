// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

#include "ocsim/channels.hpp"
#include "ocsim/processor.hpp"

namespace ocsim::test {

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double frob_diff(const Matrix& a, const Matrix& b) {
  return (a - b).norm();
}

inline Vector basis_ket(Eigen::Index dim, Eigen::Index i) {
  Vector v = Vector::Zero(dim);
  v(i) = 1.0;
  return v;
}

/// |+><+| on one qubit.
inline Matrix plus_projector() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

/// |-><-| on one qubit.
inline Matrix minus_projector() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

/// Independent pen-and-paper construction of the dephasing Choi matrix:
/// support on {|00>, |11>} with diagonal 1/2 and corner (1-2p)/2.
inline Matrix dephasing_choi_oracle(double p) {
  Matrix c = Matrix::Zero(4, 4);
  c(0, 0) = 0.5;
  c(3, 3) = 0.5;
  c(0, 3) = (1.0 - 2.0 * p) / 2.0;
  c(3, 0) = (1.0 - 2.0 * p) / 2.0;
  return c;
}

/// Random traceless Hermitian direction, scaled to unit spectral radius;
/// tangent to the unit-trace constraint.
inline Matrix random_traceless_direction(Eigen::Index dim, SplitMix64& rng) {
  Matrix d = random_hermitian(dim, rng);
  d -= (d.trace() / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
  const double scale = d.cwiseAbs().maxCoeff();
  if (scale > 0) d /= scale;
  return d;
}

/// Amplitude damping channel; the standard example of a channel the
/// teleportation processor cannot simulate exactly.
inline QuantumChannel amplitude_damping(double gamma) {
  Matrix a0(2, 2), a1(2, 2);
  a0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  a1 << 0, std::sqrt(gamma), 0, 0;
  return QuantumChannel(1, 1, {a0, a1});
}

}  // namespace ocsim::test
