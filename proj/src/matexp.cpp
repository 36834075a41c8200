#include "dspca/matexp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "dspca/errors.hpp"
#include "dspca/kernels.hpp"
#include "dspca/lapack.hpp"

namespace dspca {

namespace {

void require_finite(const SymmetricMatrix& S, const char* where) {
    if (!S.all_finite()) {
        throw InvalidInputError(std::string(where) +
                                ": matrix has non-finite entries");
    }
}

// V * diag(w) * V^T over the first k = w.size() eigenvector columns.
SymmetricMatrix weighted_outer(const Matrix& V, const std::vector<double>& w) {
    const std::size_t n = V.rows();
    const std::size_t k = w.size();
    Matrix W(n, k);
    Matrix Vk(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            W(i, j) = V(i, j) * w[j];
            Vk(i, j) = V(i, j);
        }
    }
    SymmetricMatrix out(n);
    kernels::gemm_nt(W.data(), Vk.data(), out.data(), n, n, k);
    out.symmetrize();
    return out;
}

// Normalized gradient from an eigendecomposition prefix: the weights are
// e^{lambda_i - lambda_1}, rescaled afterwards so the trace is exactly 1.
TruncatedGradient gradient_from_pairs(const Matrix& V,
                                      const std::vector<double>& lambda,
                                      std::size_t n, bool satisfied) {
    const std::size_t k = lambda.size();
    std::vector<double> w(k);
    double z = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        w[i] = std::exp(lambda[i] - lambda[0]);
        z += w[i];
    }
    for (double& wi : w) {
        wi /= z;
    }
    TruncatedGradient out{weighted_outer(V, w), static_cast<int>(k), lambda,
                          satisfied};
    const double tr = out.matrix.trace();
    kernels::scale(1.0 / tr, out.matrix.data(), n * n);
    return out;
}

TruncatedGradient gradient_full(const SymmetricMatrix& S) {
    const SpectralDecomposition eig = lapack::sym_eig(S);
    return gradient_from_pairs(eig.eigenvectors, eig.eigenvalues, S.dim(),
                               true);
}

} // namespace

Backend parse_backend(std::string_view name) {
    if (name == "full") {
        return Backend::full;
    }
    if (name == "pade") {
        return Backend::pade;
    }
    if (name == "partial") {
        return Backend::partial;
    }
    throw InvalidInputError("unknown backend '" + std::string(name) +
                            "' (expected full|pade|partial)");
}

std::string to_string(Backend backend) {
    switch (backend) {
    case Backend::full:
        return "full";
    case Backend::pade:
        return "pade";
    case Backend::partial:
        return "partial";
    }
    return "?";
}

SymmetricMatrix exp_full(const SymmetricMatrix& S) {
    require_finite(S, "exp_full");
    const SpectralDecomposition eig = lapack::sym_eig(S);
    std::vector<double> h(S.dim());
    for (std::size_t i = 0; i < h.size(); ++i) {
        h[i] = std::exp(eig.eigenvalues[i]);
    }
    return weighted_outer(eig.eigenvectors, h);
}

PadeResult exp_pade_detailed(const SymmetricMatrix& S, const PadeConfig& cfg) {
    require_finite(S, "exp_pade");
    if (cfg.p != cfg.q || cfg.p < 1) {
        throw InvalidInputError("exp_pade: requires p == q >= 1");
    }
    if (cfg.scale_target <= 0.0) {
        throw InvalidInputError("exp_pade: scale_target must be positive");
    }
    const std::size_t n = S.dim();
    const std::size_t nn = n * n;

    // Upper bound on the 2-norm: both the Frobenius and the infinity norm
    // dominate it for symmetric matrices, so take the smaller. Over-scaling
    // only costs extra squarings.
    const double norm = std::min(S.frobenius_norm(), S.infinity_norm());
    int s = 0;
    double scaled = norm;
    while (scaled > cfg.scale_target) {
        scaled *= 0.5;
        ++s;
        if (s > cfg.max_squarings) {
            throw InvalidInputError(
                "exp_pade: matrix norm too large (needs more than " +
                std::to_string(cfg.max_squarings) + " squarings)");
        }
    }

    // Coefficients c_j of the degree-p numerator, by the recurrence
    // c_{j+1} = c_j (p - j) / ((p + q - j)(j + 1)); the denominator shares
    // them with alternating signs, so an even/odd split gives both.
    const int p = cfg.p;
    std::vector<double> c(static_cast<std::size_t>(p) + 1);
    c[0] = 1.0;
    for (int j = 0; j < p; ++j) {
        c[static_cast<std::size_t>(j) + 1] =
            c[static_cast<std::size_t>(j)] * (p - j) /
            (static_cast<double>(2 * p - j) * (j + 1));
    }

    Matrix A(n, n, std::vector<double>(S.data(), S.data() + nn));
    kernels::scale(std::pow(0.5, s), A.data(), nn);

    Matrix A2(n, n);
    kernels::gemm_nn(A.data(), A.data(), A2.data(), n, n, n);
    Matrix even(n, n); // V = sum over even j of c_j A^j
    Matrix odd(n, n);  // W = sum over odd j of c_j A^{j-1}; U = A W
    Matrix power(n, n); // running even power of A
    for (std::size_t i = 0; i < n; ++i) {
        even(i, i) = c[0];
        odd(i, i) = c[1];
        power(i, i) = 1.0;
    }
    Matrix next_power(n, n);
    for (int j = 2; j <= p; j += 2) {
        kernels::gemm_nn(power.data(), A2.data(), next_power.data(), n, n, n);
        std::swap(power, next_power);
        kernels::axpy(c[static_cast<std::size_t>(j)], power.data(),
                      even.data(), nn);
        if (j + 1 <= p) {
            kernels::axpy(c[static_cast<std::size_t>(j) + 1], power.data(),
                          odd.data(), nn);
        }
    }
    Matrix U(n, n);
    kernels::gemm_nn(A.data(), odd.data(), U.data(), n, n, n);
    Matrix N(n, n);
    Matrix D(n, n);
    for (std::size_t i = 0; i < nn; ++i) {
        N.data()[i] = even.data()[i] + U.data()[i];
        D.data()[i] = even.data()[i] - U.data()[i];
    }
    try {
        lapack::solve_inplace(D, N); // N <- D^{-1} N
    } catch (const NumericalFailureError&) {
        throw NumericalFailureError(
            "exp_pade: singular Pade denominator after scaling; this should "
            "be impossible and indicates a bug");
    }

    // One symmetrization, then plain squaring: the product of a bitwise
    // symmetric matrix with itself stays bitwise symmetric.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (N(i, j) + N(j, i));
            N(i, j) = avg;
            N(j, i) = avg;
        }
    }
    Matrix square(n, n);
    for (int r = 0; r < s; ++r) {
        kernels::gemm_nn(N.data(), N.data(), square.data(), n, n, n);
        std::swap(N, square);
    }

    PadeResult out{SymmetricMatrix(n), s};
    std::copy(N.data(), N.data() + nn, out.value.data());
    return out;
}

SymmetricMatrix exp_pade(const SymmetricMatrix& S, const PadeConfig& cfg) {
    return exp_pade_detailed(S, cfg).value;
}

double truncation_lhs(const std::vector<double>& lambda_top, std::size_t n) {
    const std::size_t j = lambda_top.size();
    if (j == 0) {
        throw InvalidInputError("truncation_lhs: empty eigenvalue list");
    }
    if (j > n) {
        throw InvalidInputError("truncation_lhs: more eigenvalues than n");
    }
    for (std::size_t i = 0; i + 1 < j; ++i) {
        if (lambda_top[i] < lambda_top[i + 1]) {
            throw InvalidInputError(
                "truncation_lhs: eigenvalues not sorted descending");
        }
    }
    // Shift by the largest eigenvalue; the expression is a ratio of
    // exponential sums and does not change, but the shifted form cannot
    // overflow.
    const double shift = lambda_top[0];
    double sum1 = 0.0;
    double sum2 = 0.0;
    for (const double lam : lambda_top) {
        const double e = std::exp(lam - shift);
        sum1 += e;
        sum2 += e * e;
    }
    const double tail = std::exp(lambda_top[j - 1] - shift);
    const double nj = static_cast<double>(n - j);
    return nj * tail * std::sqrt(sum2) / (sum1 * sum1) +
           std::sqrt(nj) * tail / sum1;
}

bool truncation_condition(const std::vector<double>& lambda_top, std::size_t n,
                          double delta, double rho) {
    if (!(delta > 0.0) || !(rho > 0.0)) {
        throw InvalidInputError(
            "truncation_condition: delta and rho must be positive");
    }
    return truncation_lhs(lambda_top, n) <=
           delta / (rho * static_cast<double>(n));
}

TruncatedGradient gradient_partial(const SymmetricMatrix& S, double delta,
                                   double rho, std::size_t j_start,
                                   const PartialOptions& options) {
    require_finite(S, "gradient_partial");
    if (!(delta > 0.0) || rho < 0.0) {
        throw InvalidInputError(
            "gradient_partial: delta must be positive and rho nonnegative");
    }
    const std::size_t n = S.dim();
    // rho == 0 shrinks the feasible box to {0}; any gradient error is
    // invisible through Eq. (7)'s pairing, so the test threshold is +inf.
    const double threshold =
        rho > 0.0 ? delta / (rho * static_cast<double>(n))
                  : std::numeric_limits<double>::infinity();
    const std::size_t switchover = std::max<std::size_t>(
        1, static_cast<std::size_t>(options.switchover_fraction *
                                    static_cast<double>(n)));

    std::size_t j = std::clamp<std::size_t>(j_start, 1, n);
    while (j <= switchover && j < n) {
        const LanczosResult lz = lanczos_top(S, j, options.lanczos);
        if (!lz.converged) {
            std::fprintf(stderr,
                         "dspca: partial eigensolver did not converge at j=%zu "
                         "(n=%zu); falling back to full decomposition\n",
                         j, n);
            return gradient_full(S);
        }
        if (truncation_lhs(lz.eigenvalues, n) <= threshold) {
            return gradient_from_pairs(lz.eigenvectors, lz.eigenvalues, n,
                                       true);
        }
        j = std::max(j + 1, static_cast<std::size_t>(
                                std::ceil(1.5 * static_cast<double>(j))));
    }
    return gradient_full(S);
}

TruncatedGradient normalized_gradient(const SymmetricMatrix& S,
                                      Backend backend, double delta,
                                      double rho, std::size_t j_start,
                                      const PartialOptions& options) {
    switch (backend) {
    case Backend::full:
        require_finite(S, "normalized_gradient");
        return gradient_full(S);
    case Backend::pade: {
        require_finite(S, "normalized_gradient");
        // Shift by an estimate of lambda_1 before exponentiating so the
        // unnormalized exponential stays in range; the normalization removes
        // the shift exactly.
        LanczosOptions lo;
        lo.max_basis = std::min<std::size_t>(S.dim(), 40);
        lo.tolerance = 1e-8;
        const LanczosResult lz = lanczos_top(S, 1, lo);
        const double c = lz.eigenvalues[0];
        SymmetricMatrix shifted = S;
        for (std::size_t i = 0; i < S.dim(); ++i) {
            shifted.set(i, i, shifted(i, i) - c);
        }
        SymmetricMatrix R = exp_pade(shifted);
        const double tr = R.trace();
        if (!(tr > 0.0) || !std::isfinite(tr)) {
            throw NumericalFailureError(
                "normalized_gradient: Pade exponential has non-positive "
                "trace");
        }
        kernels::scale(1.0 / tr, R.data(), R.dim() * R.dim());
        return TruncatedGradient{std::move(R), static_cast<int>(S.dim()),
                                 {},
                                 true};
    }
    case Backend::partial:
        return gradient_partial(S, delta, rho, j_start, options);
    }
    throw InvalidInputError("normalized_gradient: unknown backend");
}

} // namespace dspca
