#pragma once

#include "relspec/types.hpp"

namespace relspec {

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
/// Postconditions: |U diag(l) U* - H|_F <= 1e-10 |H|_F, |U*U - I|_F <= 1e-10.
EigenDecomposition hermitian_eig(const HermitianMatrix& H);

/// Eigenvalues of a general square complex matrix, with multiplicity.
std::vector<cplx> general_eigenvalues(const Matrix& A);

/// Nonnegative square root of a PSD Hermitian matrix. Eigenvalues in
/// [-tol_psd, 0) are clamped to zero; below -tol_psd raises
/// NotPositiveSemidefinite. tol_psd = 1e-10 * |M|.
HermitianMatrix psd_sqrt(const HermitianMatrix& M);

double smallest_singular_value(const Matrix& A);

/// Unitary matrix whose first k columns are the supplied orthonormal columns,
/// completed deterministically over the orthogonal complement.
Matrix complete_unitary(const Matrix& columns, Eigen::Index dim);

/// Deterministic random Hermitian matrix (test and demo fixture).
HermitianMatrix random_hermitian(Eigen::Index dim, unsigned seed, double scale = 1.0);
Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed, double scale = 1.0);
Matrix random_unitary(Eigen::Index dim, unsigned seed);

}  // namespace relspec
