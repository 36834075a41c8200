#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "dspca/errors.hpp"
#include "dspca/kernels.hpp"
#include "dspca/lanczos.hpp"
#include "dspca/lapack.hpp"
#include "dspca/matexp.hpp"
#include "test_util.hpp"

using namespace dspca;
using testutil::diag;
using testutil::max_abs_diff;
using testutil::random_sym;
using testutil::rel_fro_diff;

namespace {

SymmetricMatrix scaled_to_radius(std::size_t n, double radius, Rng& rng) {
    SymmetricMatrix S = random_sym(n, rng);
    const std::vector<double> ev = lapack::sym_eigenvalues(S);
    const double r = std::max(std::fabs(ev.front()), std::fabs(ev.back()));
    kernels::scale(radius / r, S.data(), n * n);
    return S;
}

double min_eigenvalue(const SymmetricMatrix& S) {
    return lapack::sym_eigenvalues(S).back();
}

} // namespace

TEST_CASE("exp_full of the zero matrix is the identity") {
    const SymmetricMatrix E = exp_full(SymmetricMatrix(3));
    CHECK(max_abs_diff(E, SymmetricMatrix::identity(3)) <= 1e-14);
}

TEST_CASE("exp_full maps diag(0, ln 2, ln 3) to diag(1, 2, 3)") {
    const SymmetricMatrix E =
        exp_full(diag({0.0, std::log(2.0), std::log(3.0)}));
    CHECK(max_abs_diff(E, diag({1.0, 2.0, 3.0})) <= 1e-12);
}

TEST_CASE("exp_full exponentiates diagonal spectra entrywise") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> d(8);
        for (double& di : d) {
            di = rng.uniform(-4.0, 4.0);
        }
        const SymmetricMatrix E = exp_full(diag(d));
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(E(i, i) ==
                  doctest::Approx(std::exp(d[i])).epsilon(1e-10));
        }
    }
}

TEST_CASE("pade agrees with full on random small matrices") {
    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        const SymmetricMatrix S = random_sym(6, rng);
        CHECK(rel_fro_diff(exp_pade(S), exp_full(S)) <= 1e-9);
    }
}

TEST_CASE("pade agrees with full at spectral radius 5") {
    Rng rng(27);
    const SymmetricMatrix S = scaled_to_radius(10, 5.0, rng);
    CHECK(rel_fro_diff(exp_pade(S), exp_full(S)) <= 1e-9);
}

TEST_CASE("exp_pade handles the zero matrix without squaring") {
    const PadeResult r = exp_pade_detailed(SymmetricMatrix(3));
    CHECK(r.squarings == 0);
    CHECK(max_abs_diff(r.value, SymmetricMatrix::identity(3)) <= 1e-15);
}

TEST_CASE("exp_pade on the 1x1 matrix [1] returns e after one squaring") {
    const PadeResult r = exp_pade_detailed(diag({1.0}));
    // ||S|| = 1 reaches the 1/2 target after exactly one halving.
    CHECK(r.squarings == 1);
    CHECK(r.value(0, 0) ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("exp_pade output is bitwise symmetric") {
    Rng rng(37);
    const SymmetricMatrix S = scaled_to_radius(12, 8.0, rng);
    const SymmetricMatrix E = exp_pade(S);
    for (std::size_t i = 0; i < 12; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            CHECK(E(i, j) == E(j, i));
        }
    }
}

TEST_CASE("exp_pade rejects bad configs and over-sized norms") {
    PadeConfig bad;
    bad.q = 5;
    CHECK_THROWS_AS(exp_pade(diag({1.0}), bad), InvalidInputError);

    // A norm of 1e25 needs more than 64 halvings to reach 1/2.
    CHECK_THROWS_AS(exp_pade(diag({1e25})), InvalidInputError);
}

TEST_CASE("non-finite input is rejected by every backend") {
    SymmetricMatrix S(2);
    S.set(0, 1, std::numeric_limits<double>::quiet_NaN());
    CHECK_THROWS_AS(exp_full(S), InvalidInputError);
    CHECK_THROWS_AS(exp_pade(S), InvalidInputError);
    CHECK_THROWS_AS(gradient_partial(S, 1e-3, 1.0), InvalidInputError);
}

TEST_CASE("truncation_lhs frozen value for [10, 0] with n = 100") {
    const double lhs = truncation_lhs({10.0, 0.0}, 100);
    CHECK(lhs == doctest::Approx(0.004898205134060794).epsilon(1e-12));
    // delta/(rho n) = 1e-3 is below the lhs, so two eigenvalues do not
    // suffice at that accuracy.
    CHECK_FALSE(truncation_condition({10.0, 0.0}, 100, 0.1, 1.0));
    // A looser budget passes.
    CHECK(truncation_condition({10.0, 0.0}, 100, 1.0, 0.001));
}

TEST_CASE("truncation_lhs is invariant under spectrum shifts, bitwise") {
    CHECK(truncation_lhs({110.0, 100.0}, 100) ==
          truncation_lhs({10.0, 0.0}, 100));
    Rng rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        // Dyadic spectra (multiples of 2^-10) keep both the +512 shift and
        // the eigenvalue differences exact, so bitwise equality is fair.
        std::vector<double> lam(5);
        lam[0] = static_cast<double>(rng.uniform_index(10240)) / 1024.0;
        for (std::size_t i = 1; i < lam.size(); ++i) {
            lam[i] = lam[i - 1] -
                     static_cast<double>(rng.uniform_index(3072)) / 1024.0;
        }
        std::vector<double> shifted = lam;
        for (double& l : shifted) {
            l += 512.0;
        }
        CHECK(truncation_lhs(lam, 40) == truncation_lhs(shifted, 40));
    }
}

TEST_CASE("truncation at j = n is exact: lhs is zero, condition holds") {
    CHECK(truncation_lhs({3.0, 1.0, -2.0}, 3) == 0.0);
    CHECK(truncation_condition({3.0, 1.0, -2.0}, 3, 1e-12, 1e6));
}

TEST_CASE("truncation lhs decreases as j grows") {
    Rng rng(57);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 30;
        std::vector<double> lam(n);
        lam[0] = rng.uniform(-5.0, 20.0);
        for (std::size_t i = 1; i < n; ++i) {
            lam[i] = lam[i - 1] - rng.uniform(0.01, 4.0);
        }
        double prev = truncation_lhs({lam[0]}, n);
        for (std::size_t j = 2; j <= n; ++j) {
            const double cur =
                truncation_lhs({lam.begin(), lam.begin() + j}, n);
            CHECK(cur <= prev + 1e-12 * std::max(1.0, prev));
            prev = cur;
        }
    }
}

TEST_CASE("truncation_lhs input validation") {
    CHECK_THROWS_AS(truncation_lhs({}, 5), InvalidInputError);
    CHECK_THROWS_AS(truncation_lhs({1.0, 2.0}, 5), InvalidInputError);
    CHECK_THROWS_AS(truncation_lhs({1.0, 2.0, 3.0}, 2), InvalidInputError);
    CHECK_THROWS_AS(truncation_condition({1.0}, 5, 0.0, 1.0),
                    InvalidInputError);
    CHECK_THROWS_AS(truncation_condition({1.0}, 5, 1e-3, -1.0),
                    InvalidInputError);
}

TEST_CASE("gradient_partial with one dominant eigenvalue stops early") {
    // diag(100, 0, ..., 0): the weight of every trailing eigenvalue is
    // e^{-100}, so two eigenpairs already certify any realistic budget.
    std::vector<double> d(20, 0.0);
    d[0] = 100.0;
    const TruncatedGradient g = gradient_partial(diag(d), 2e-5, 1.0);
    CHECK(g.condition_satisfied);
    CHECK(g.eigs_used == 2);
    CHECK(g.top_eigenvalues[0] == doctest::Approx(100.0).epsilon(1e-8));

    SymmetricMatrix e11(20);
    e11.set(0, 0, 1.0);
    CHECK(max_abs_diff(g.matrix, e11) <= 1e-10);
    CHECK(std::fabs(g.matrix.trace() - 1.0) <= 1e-12);
}

TEST_CASE("gradient_partial falls back to the full path on flat spectra") {
    Rng rng(67);
    const std::size_t n = 12;
    const SymmetricMatrix S = random_sym(n, rng);
    const TruncatedGradient partial = gradient_partial(S, 1e-9, 10.0);
    CHECK(partial.eigs_used == static_cast<int>(n));
    CHECK(partial.condition_satisfied);

    const SymmetricMatrix E = exp_full(S);
    SymmetricMatrix expected = E;
    kernels::scale(1.0 / E.trace(), expected.data(), n * n);
    CHECK(max_abs_diff(partial.matrix, expected) <= 1e-12);
}

TEST_CASE("rho = 0 makes the truncation test vacuous") {
    Rng rng(77);
    const SymmetricMatrix S = random_sym(16, rng);
    const TruncatedGradient g = gradient_partial(S, 1e-3, 0.0);
    CHECK(g.eigs_used == 1);
    CHECK(g.condition_satisfied);
    CHECK(std::fabs(g.matrix.trace() - 1.0) <= 1e-12);
}

TEST_CASE("normalized gradient is unit trace and positive semidefinite") {
    Rng rng(87);
    for (const Backend backend :
         {Backend::full, Backend::pade, Backend::partial}) {
        const SymmetricMatrix S = scaled_to_radius(10, 6.0, rng);
        const TruncatedGradient g =
            normalized_gradient(S, backend, 1e-2, 0.5);
        CHECK(std::fabs(g.matrix.trace() - 1.0) <= 1e-12);
        CHECK(min_eigenvalue(g.matrix) >= -1e-10);
        if (backend == Backend::pade) {
            CHECK(g.top_eigenvalues.empty());
        } else {
            CHECK_FALSE(g.top_eigenvalues.empty());
        }
    }
}

TEST_CASE("pade and full backends agree on the normalized gradient") {
    Rng rng(97);
    const SymmetricMatrix S = scaled_to_radius(8, 12.0, rng);
    const TruncatedGradient gf = normalized_gradient(S, Backend::full, 1e-2, 0.5);
    const TruncatedGradient gp = normalized_gradient(S, Backend::pade, 1e-2, 0.5);
    CHECK(max_abs_diff(gf.matrix, gp.matrix) <= 1e-12);
}

TEST_CASE("truncated gradient satisfies the Eq. (7) pairing bound") {
    Rng rng(107);
    const std::size_t n = 40;
    const double delta = 1e-2;
    const double rho = 0.5;

    // Decaying spectrum rotated by a random orthogonal basis.
    const SpectralDecomposition basis = lapack::sym_eig(random_sym(n, rng));
    std::vector<double> lam(n);
    for (std::size_t i = 0; i < n; ++i) {
        lam[i] = 25.0 * std::pow(0.6, static_cast<double>(i));
    }
    SymmetricMatrix S(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double acc = 0.0;
            for (std::size_t p = 0; p < n; ++p) {
                acc += basis.eigenvectors(i, p) * lam[p] *
                       basis.eigenvectors(j, p);
            }
            S.set(i, j, acc);
        }
    }

    const TruncatedGradient approx = gradient_partial(S, delta, rho);
    REQUIRE(approx.condition_satisfied);
    REQUIRE(approx.eigs_used < static_cast<int>(n));

    const SymmetricMatrix E = exp_full(S);
    SymmetricMatrix exact = E;
    kernels::scale(1.0 / E.trace(), exact.data(), n * n);

    for (int trial = 0; trial < 50; ++trial) {
        SymmetricMatrix Y(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                Y.set(i, j, rng.uniform() < 0.5 ? -rho : rho);
            }
        }
        double inner = 0.0;
        for (std::size_t i = 0; i < n * n; ++i) {
            inner += (approx.matrix.data()[i] - exact.data()[i]) * Y.data()[i];
        }
        CHECK(std::fabs(inner) <= delta);
    }
}

TEST_CASE("parse_backend round-trips and rejects unknown names") {
    CHECK(parse_backend("full") == Backend::full);
    CHECK(parse_backend("pade") == Backend::pade);
    CHECK(parse_backend("partial") == Backend::partial);
    CHECK(to_string(Backend::pade) == "pade");
    CHECK_THROWS_AS(parse_backend("exact"), InvalidInputError);
}

TEST_CASE("dense eigendecomposition invariants") {
    Rng rng(117);
    const std::size_t n = 10;
    const SymmetricMatrix S = random_sym(n, rng);
    const SpectralDecomposition eig = lapack::sym_eig(S);

    for (std::size_t i = 1; i < n; ++i) {
        CHECK(eig.eigenvalues[i - 1] >= eig.eigenvalues[i]);
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                dot += eig.eigenvectors(i, a) * eig.eigenvectors(i, b);
            }
            CHECK(dot == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-10));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t p = 0; p < n; ++p) {
                acc += eig.eigenvectors(i, p) * eig.eigenvalues[p] *
                       eig.eigenvectors(j, p);
            }
            CHECK(acc == doctest::Approx(S(i, j)).epsilon(1e-8));
        }
    }
}

TEST_CASE("lanczos matches the dense solver on leading eigenpairs") {
    Rng rng(127);
    const std::size_t n = 30;
    const SymmetricMatrix S = random_sym(n, rng);
    const std::vector<double> dense = lapack::sym_eigenvalues(S);

    const LanczosResult lz = lanczos_top(S, 3);
    REQUIRE(lz.converged);
    REQUIRE(lz.eigenvalues.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(lz.eigenvalues[i] == doctest::Approx(dense[i]).epsilon(1e-8));
        // Residual ||S v - lambda v||.
        std::vector<double> v(n), Sv(n);
        for (std::size_t r = 0; r < n; ++r) {
            v[r] = lz.eigenvectors(r, i);
        }
        kernels::sym_matvec(S.data(), n, v.data(), Sv.data());
        double res = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double d = Sv[r] - lz.eigenvalues[i] * v[r];
            res += d * d;
        }
        CHECK(std::sqrt(res) <= 1e-7 * std::max(1.0, std::fabs(dense[0])));
    }

    // Deterministic: a second run reproduces the same bits.
    const LanczosResult again = lanczos_top(S, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(lz.eigenvalues[i] == again.eigenvalues[i]);
    }
}
