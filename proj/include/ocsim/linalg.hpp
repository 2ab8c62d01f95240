// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

#include <Eigen/Dense>

#include "ocsim/errors.hpp"
#include "ocsim/rng.hpp"

namespace ocsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Tolerances shared by the dense kernel and the quantum-state layer.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdSlack = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kLogFloor = 1e-12;

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are real and always sorted descending; eigenvectors.col(i)
/// pairs with eigenvalues(i) and the columns form an orthonormal basis.
struct EigDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;

  Matrix reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() *
           eigenvectors.adjoint();
  }
};

/// Scalar maps applied spectrally to Hermitian matrices.
enum class MatrixFunc { Exp, Log, Sqrt, InvSqrt };

/// Which tensor factor partial_trace removes.
enum class TraceSide { First, Last };

bool is_hermitian(const Matrix& a, double tol = kHermitianTol);

/// Diagonalizes a Hermitian matrix. The input is symmetrized as (A + A')/2
/// before decomposing, absorbing round-off accumulated by callers.
EigDecomposition eig_hermitian(const Matrix& a);

/// Spectral map f(A) = sum_i f(lambda_i) v_i v_i'.
///
/// For Log and InvSqrt the eigenvalues are floored at eps before applying the
/// scalar map; for Sqrt they are floored at zero. Log, Sqrt and InvSqrt
/// require A to be PSD up to a small negative slack.
Matrix matrix_function(const Matrix& a, MatrixFunc f, double eps = 0.0);

/// Sum of singular values.
double trace_norm(const Matrix& a);

/// Largest singular value.
double spectral_norm(const Matrix& a);

/// (A + A')/2.
Matrix hermitian_part(const Matrix& a);

/// Kronecker product.
Matrix kron(const Matrix& a, const Matrix& b);

/// Traces out one tensor factor of a bipartite operator.
///
/// `which` names the factor that is removed. For TraceSide::Last the operator
/// lives on keep (x) discard; for TraceSide::First on discard (x) keep. The
/// result is the dim_keep x dim_keep reduced operator.
Matrix partial_trace(const Matrix& a, Eigen::Index dim_keep,
                     Eigen::Index dim_discard, TraceSide which);

// Random matrix fixtures driven by the deterministic generator.

/// Matrix with iid standard complex Gaussian entries.
Matrix random_ginibre(Eigen::Index n, SplitMix64& rng);

/// Random Hermitian matrix with O(1) entries.
Matrix random_hermitian(Eigen::Index n, SplitMix64& rng);

/// Haar-ish random unitary (QR of a Ginibre matrix).
Matrix random_unitary(Eigen::Index n, SplitMix64& rng);

/// Random full-rank density matrix G G' / tr(G G').
Matrix random_density(Eigen::Index n, SplitMix64& rng);

}  // namespace ocsim
