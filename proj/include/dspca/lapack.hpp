#pragma once

#include <vector>

#include "dspca/types.hpp"

// Thin wrappers around the LAPACK routines the library relies on. Dense
// eigendecomposition and LU solves are standard machinery; everything built
// on top of them lives in matexp/lanczos.
namespace dspca::lapack {

// Full symmetric eigendecomposition, eigenvalues descending with matching
// eigenvector columns. Throws NumericalFailureError on non-convergence.
SpectralDecomposition sym_eig(const SymmetricMatrix& S);

// Eigenvalues only, descending.
std::vector<double> sym_eigenvalues(const SymmetricMatrix& S);

// Eigendecomposition of a symmetric tridiagonal matrix given its diagonal
// and off-diagonal; eigenvalues descending, eigenvectors as columns.
SpectralDecomposition tridiag_eig(const std::vector<double>& diag,
                                  const std::vector<double>& offdiag);

// Solves A X = B in place: B (n x n, row-major) is overwritten with the
// solution. Throws NumericalFailureError when A is singular.
void solve_inplace(Matrix& A, Matrix& B);

} // namespace dspca::lapack
