#pragma once

#include <vector>

#include "ncg/cmatrix.hpp"

namespace ncg {

/// Eigendecomposition of a Hermitian matrix: M = Q diag(values) Q*,
/// values ascending, Q unitary with eigenvectors as columns.
struct EigResult {
  std::vector<double> values;
  CMatrix vectors;
};

/// Real eigenvalues of a Hermitian matrix, sorted ascending.
/// Householder tridiagonalization followed by implicit QL with Wilkinson shifts.
std::vector<double> eig_hermitian(const CMatrix& m, Tolerance tol = {});

EigResult eig_hermitian_full(const CMatrix& m, Tolerance tol = {});

/// Determinant via LU factorization with partial pivoting.
Complex determinant(const CMatrix& m);

/// Pfaffian of a complex skew-symmetric matrix (M^T = -M) of even dimension.
/// Parlett-Reid skew tridiagonalization with partial pivoting and pivot-sign
/// tracking; satisfies Pf(M)^2 = det(M).
Complex pfaffian_skew(const CMatrix& m, Tolerance tol = {});

/// exp(A) for anti-Hermitian A, computed through the Hermitian
/// eigendecomposition of -iA. The result is unitary.
CMatrix unitary_exp(const CMatrix& a, Tolerance tol = {});

}  // namespace ncg
