#include "dspca/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dspca/errors.hpp"
#include "dspca/kernels.hpp"
#include "dspca/lapack.hpp"
#include "dspca/rng.hpp"

namespace dspca {

namespace {

double norm2(const std::vector<double>& v) {
    return std::sqrt(kernels::dot(v.data(), v.data(), v.size()));
}

// Two Gram-Schmidt passes against every stored basis vector; with full
// reorthogonalization the basis stays orthonormal to machine precision,
// which is what makes the Ritz residual estimate trustworthy.
void reorthogonalize(std::vector<double>& w,
                     const std::vector<std::vector<double>>& basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& v : basis) {
            const double c = kernels::dot(w.data(), v.data(), w.size());
            kernels::axpy(-c, v.data(), w.data(), w.size());
        }
    }
}

// Draws a random vector orthogonal to the current basis. Returns false when
// the basis already spans the whole space.
bool fresh_direction(Rng& rng, const std::vector<std::vector<double>>& basis,
                     std::vector<double>& out) {
    const std::size_t n = out.size();
    for (int attempt = 0; attempt < 4; ++attempt) {
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = rng.normal();
        }
        reorthogonalize(out, basis);
        const double nrm = norm2(out);
        if (nrm > 1e-8 * std::sqrt(static_cast<double>(n))) {
            kernels::scale(1.0 / nrm, out.data(), n);
            return true;
        }
    }
    return false;
}

} // namespace

LanczosResult lanczos_top(const SymmetricMatrix& S, std::size_t k,
                          const LanczosOptions& options) {
    const std::size_t n = S.dim();
    if (k == 0 || k > n) {
        throw InvalidInputError("lanczos_top: requested " + std::to_string(k) +
                                " eigenpairs of an order-" + std::to_string(n) +
                                " matrix");
    }

    LanczosResult result;
    if (n == 1) {
        result.eigenvalues = {S(0, 0)};
        result.eigenvectors = Matrix(1, 1, 1.0);
        result.converged = true;
        result.basis_size = 1;
        return result;
    }

    const std::size_t m_max =
        options.max_basis > 0
            ? std::min(n, options.max_basis)
            : std::min(n, std::max<std::size_t>(4 * k + 40, 80));

    Rng rng(options.seed);
    std::vector<std::vector<double>> basis;
    basis.reserve(m_max);
    std::vector<double> alpha;
    std::vector<double> beta; // beta[j] couples basis[j] and basis[j+1]

    std::vector<double> v0(n);
    if (!fresh_direction(rng, basis, v0)) {
        throw NumericalFailureError("lanczos_top: could not draw start vector");
    }
    basis.push_back(std::move(v0));

    std::vector<double> w(n);

    // Assembles the top-k Ritz pairs from the current basis; beta_out is the
    // coupling to the next (not yet accepted) vector, so |beta_out * s_{m,i}|
    // bounds the residual of Ritz pair i.
    auto extract = [&](double beta_out, bool check_residuals) -> bool {
        const std::size_t m = alpha.size();
        if (m < k) {
            return false;
        }
        const std::vector<double> off(beta.begin(),
                                      beta.begin() + static_cast<long>(m - 1));
        const SpectralDecomposition tri = lapack::tridiag_eig(alpha, off);
        if (check_residuals) {
            const double scale =
                std::max({std::fabs(tri.eigenvalues.front()),
                          std::fabs(tri.eigenvalues.back()), 1e-300});
            for (std::size_t i = 0; i < k; ++i) {
                const double s_last = tri.eigenvectors(m - 1, i);
                if (std::fabs(beta_out * s_last) > options.tolerance * scale) {
                    return false;
                }
            }
        }
        result.eigenvalues.assign(
            tri.eigenvalues.begin(),
            tri.eigenvalues.begin() + static_cast<long>(k));
        result.eigenvectors = Matrix(n, k);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                double acc = 0.0;
                for (std::size_t t = 0; t < m; ++t) {
                    acc += basis[t][i] * tri.eigenvectors(t, j);
                }
                result.eigenvectors(i, j) = acc;
            }
        }
        result.basis_size = m;
        return true;
    };

    while (alpha.size() < m_max) {
        const std::vector<double>& vj = basis.back();
        kernels::sym_matvec(S.data(), n, vj.data(), w.data());
        ++result.matvecs;
        const double a = kernels::dot(w.data(), vj.data(), n);
        alpha.push_back(a);
        kernels::axpy(-a, vj.data(), w.data(), n);
        if (basis.size() >= 2) {
            kernels::axpy(-beta[basis.size() - 2],
                          basis[basis.size() - 2].data(), w.data(), n);
        }
        reorthogonalize(w, basis);
        const double b = norm2(w);

        const bool breakdown = b <= 1e-13 * std::max(1.0, std::fabs(a));
        if (breakdown) {
            // Invariant subspace: Ritz pairs inside it are exact. Take them
            // if we have enough, otherwise restart in the orthogonal
            // complement (the zero coupling keeps T block tridiagonal).
            if (alpha.size() >= k && extract(0.0, false)) {
                result.converged = true;
                return result;
            }
            std::vector<double> next(n);
            if (!fresh_direction(rng, basis, next)) {
                break;
            }
            beta.push_back(0.0);
            basis.push_back(std::move(next));
            continue;
        }

        if (alpha.size() >= k && extract(b, true)) {
            result.converged = true;
            return result;
        }
        if (alpha.size() == m_max) {
            break;
        }
        beta.push_back(b);
        std::vector<double> next = w;
        kernels::scale(1.0 / b, next.data(), n);
        basis.push_back(std::move(next));
    }

    // Budget exhausted (or the whole space was captured): hand back the best
    // Ritz pairs. When the basis spans R^n they are exact.
    if (extract(0.0, false)) {
        result.converged = alpha.size() == n;
        return result;
    }
    throw NumericalFailureError("lanczos_top: basis too small for " +
                                std::to_string(k) + " Ritz pairs");
}

} // namespace dspca
