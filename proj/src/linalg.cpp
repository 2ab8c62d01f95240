// Copyright (c) 2026 ocsim contributors
// SPDX-License-Identifier: Apache-2.0

#include "ocsim/linalg.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace ocsim {

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

EigDecomposition eig_hermitian(const Matrix& a) {
  if (!a.allFinite()) throw NonFiniteInput("eig_hermitian: non-finite entry");
  if (a.rows() != a.cols()) throw NotSquare("eig_hermitian: matrix not square");
  const Matrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw Error("eig_hermitian: eigensolver did not converge");
  EigDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

Matrix matrix_function(const Matrix& a, MatrixFunc f, double eps) {
  const EigDecomposition eig = eig_hermitian(a);
  const Eigen::Index n = eig.eigenvalues.size();
  if (f != MatrixFunc::Exp && eig.eigenvalues.minCoeff() < -kPsdSlack)
    throw NotPsd("matrix_function: input not PSD");
  RealVector mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lam = eig.eigenvalues(i);
    switch (f) {
      case MatrixFunc::Exp:
        mapped(i) = std::exp(lam);
        break;
      case MatrixFunc::Log:
        mapped(i) = std::log(std::max(lam, eps));
        break;
      case MatrixFunc::Sqrt:
        mapped(i) = std::sqrt(std::max(lam, 0.0));
        break;
      case MatrixFunc::InvSqrt:
        mapped(i) = 1.0 / std::sqrt(std::max(lam, eps));
        break;
    }
  }
  return hermitian_part(eig.eigenvectors * mapped.asDiagonal() *
                        eig.eigenvectors.adjoint());
}

double trace_norm(const Matrix& a) {
  if (!a.allFinite()) throw NonFiniteInput("trace_norm: non-finite entry");
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

double spectral_norm(const Matrix& a) {
  if (!a.allFinite()) throw NonFiniteInput("spectral_norm: non-finite entry");
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

Matrix hermitian_part(const Matrix& a) {
  if (a.rows() != a.cols())
    throw NotSquare("hermitian_part: matrix not square");
  return 0.5 * (a + a.adjoint());
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (!a.allFinite() || !b.allFinite())
    throw NonFiniteInput("kron: non-finite entry");
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_trace(const Matrix& a, Eigen::Index dim_keep,
                     Eigen::Index dim_discard, TraceSide which) {
  if (dim_keep <= 0 || dim_discard <= 0)
    throw DimensionMismatch("partial_trace: nonpositive dimension");
  const Eigen::Index total = dim_keep * dim_discard;
  if (a.rows() != total || a.cols() != total)
    throw DimensionMismatch("partial_trace: operator dimension mismatch");
  Matrix out = Matrix::Zero(dim_keep, dim_keep);
  if (which == TraceSide::Last) {
    // layout keep (x) discard
    for (Eigen::Index i = 0; i < dim_keep; ++i)
      for (Eigen::Index k = 0; k < dim_keep; ++k)
        for (Eigen::Index j = 0; j < dim_discard; ++j)
          out(i, k) += a(i * dim_discard + j, k * dim_discard + j);
  } else {
    // layout discard (x) keep
    for (Eigen::Index i = 0; i < dim_keep; ++i)
      for (Eigen::Index k = 0; k < dim_keep; ++k)
        for (Eigen::Index j = 0; j < dim_discard; ++j)
          out(i, k) += a(j * dim_keep + i, j * dim_keep + k);
  }
  return out;
}

Matrix random_ginibre(Eigen::Index n, SplitMix64& rng) {
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  return g;
}

Matrix random_hermitian(Eigen::Index n, SplitMix64& rng) {
  return hermitian_part(random_ginibre(n, rng));
}

Matrix random_unitary(Eigen::Index n, SplitMix64& rng) {
  const Matrix g = random_ginibre(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix the phase of each column so the distribution does not depend on the
  // QR sign conventions.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Matrix random_density(Eigen::Index n, SplitMix64& rng) {
  const Matrix g = random_ginibre(n, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

}  // namespace ocsim
