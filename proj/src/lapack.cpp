#include "dspca/lapack.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "dspca/errors.hpp"
#include "dspca/threading.hpp"

namespace dspca::lapack {

namespace {

// Reorders an ascending LAPACK spectrum into the descending convention used
// throughout the library.
SpectralDecomposition descending(std::size_t n, std::size_t k,
                                 const std::vector<double>& w,
                                 const std::vector<double>& z) {
    SpectralDecomposition out;
    out.eigenvalues.resize(k);
    out.eigenvectors = Matrix(n, k);
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t src = k - 1 - j;
        out.eigenvalues[j] = w[src];
        for (std::size_t i = 0; i < n; ++i) {
            out.eigenvectors(i, j) = z[i * k + src];
        }
    }
    return out;
}

} // namespace

SpectralDecomposition sym_eig(const SymmetricMatrix& S) {
    threading::cap_blas_threads();
    const std::size_t n = S.dim();
    std::vector<double> a(S.data(), S.data() + n * n);
    std::vector<double> w(n);
    const lapack_int info = LAPACKE_dsyevd(
        LAPACK_ROW_MAJOR, 'V', 'L', static_cast<lapack_int>(n), a.data(),
        static_cast<lapack_int>(n), w.data());
    if (info != 0) {
        throw NumericalFailureError("dsyevd failed to converge (info=" +
                                    std::to_string(info) + ")");
    }
    return descending(n, n, w, a);
}

std::vector<double> sym_eigenvalues(const SymmetricMatrix& S) {
    threading::cap_blas_threads();
    const std::size_t n = S.dim();
    std::vector<double> a(S.data(), S.data() + n * n);
    std::vector<double> w(n);
    const lapack_int info = LAPACKE_dsyevd(
        LAPACK_ROW_MAJOR, 'N', 'L', static_cast<lapack_int>(n), a.data(),
        static_cast<lapack_int>(n), w.data());
    if (info != 0) {
        throw NumericalFailureError("dsyevd (values) failed to converge (info=" +
                                    std::to_string(info) + ")");
    }
    std::reverse(w.begin(), w.end());
    return w;
}

SpectralDecomposition tridiag_eig(const std::vector<double>& diag,
                                  const std::vector<double>& offdiag) {
    threading::cap_blas_threads();
    const std::size_t m = diag.size();
    if (m == 0) {
        throw InvalidInputError("tridiag_eig: empty matrix");
    }
    if (offdiag.size() + 1 != m) {
        throw InvalidInputError("tridiag_eig: off-diagonal size mismatch");
    }
    std::vector<double> d = diag;
    std::vector<double> e = offdiag;
    std::vector<double> z(m * m);
    const lapack_int info = LAPACKE_dstevd(
        LAPACK_ROW_MAJOR, 'V', static_cast<lapack_int>(m), d.data(), e.data(),
        z.data(), static_cast<lapack_int>(m));
    if (info != 0) {
        throw NumericalFailureError("dstevd failed to converge (info=" +
                                    std::to_string(info) + ")");
    }
    return descending(m, m, d, z);
}

void solve_inplace(Matrix& A, Matrix& B) {
    threading::cap_blas_threads();
    if (A.rows() != A.cols() || A.rows() != B.rows()) {
        throw InvalidInputError("solve_inplace: dimension mismatch");
    }
    const lapack_int n = static_cast<lapack_int>(A.rows());
    const lapack_int nrhs = static_cast<lapack_int>(B.cols());
    std::vector<lapack_int> ipiv(A.rows());
    const lapack_int info = LAPACKE_dgesv(LAPACK_ROW_MAJOR, n, nrhs, A.data(),
                                          n, ipiv.data(), B.data(), nrhs);
    if (info > 0) {
        throw NumericalFailureError(
            "dgesv: matrix is singular (pivot " + std::to_string(info) + ")");
    }
    if (info < 0) {
        throw NumericalFailureError("dgesv: invalid argument " +
                                    std::to_string(-info));
    }
}

} // namespace dspca::lapack
