#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstring>
#include <vector>

#include "dspca/kernels.hpp"
#include "dspca/rng.hpp"

using namespace dspca;

namespace {

std::vector<double> random_vec(std::size_t n, Rng& rng, double lo = -2.0,
                               double hi = 2.0) {
    std::vector<double> v(n);
    for (double& vi : v) {
        vi = rng.uniform(lo, hi);
    }
    return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Naive reference implementations, written independently of src/kernels.cpp.
void naive_gemm_nn(const double* A, const double* B, double* C, std::size_t m,
                   std::size_t n, std::size_t k) {
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t p = 0; p < k; ++p) {
                acc += A[i * k + p] * B[p * n + j];
            }
            C[i * n + j] = acc;
        }
    }
}

void naive_gemm_nt(const double* A, const double* B, double* C, std::size_t m,
                   std::size_t n, std::size_t k) {
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t p = 0; p < k; ++p) {
                acc += A[i * k + p] * B[j * k + p];
            }
            C[i * n + j] = acc;
        }
    }
}

} // namespace

TEST_CASE("dot, abs_sum, axpy, scale, clamp hand values") {
    const double x[3] = {1.0, 2.0, 3.0};
    const double y[3] = {4.0, 5.0, 6.0};
    CHECK(kernels::dot(x, y, 3) == 32.0);

    const double z[3] = {-1.0, 2.0, -3.0};
    CHECK(kernels::abs_sum(z, 3) == 6.0);

    double acc[2] = {3.0, 4.0};
    const double inc[2] = {1.0, 1.0};
    kernels::axpy(2.0, inc, acc, 2);
    CHECK(acc[0] == 5.0);
    CHECK(acc[1] == 6.0);

    double s[3] = {1.0, -2.0, 4.0};
    kernels::scale(0.5, s, 3);
    CHECK(s[0] == 0.5);
    CHECK(s[1] == -1.0);
    CHECK(s[2] == 2.0);

    const double c_in[4] = {-5.0, -0.5, 0.5, 5.0};
    double c_out[4];
    kernels::clamp(c_in, c_out, 4, -1.0, 1.0);
    CHECK(c_out[0] == -1.0);
    CHECK(c_out[1] == -0.5);
    CHECK(c_out[2] == 0.5);
    CHECK(c_out[3] == 1.0);
}

TEST_CASE("clamp works in place (aliased input and output)") {
    Rng rng(11);
    std::vector<double> v = random_vec(257, rng, -3.0, 3.0);
    std::vector<double> expected(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        expected[i] = std::clamp(v[i], -1.5, 1.5);
    }
    kernels::clamp(v.data(), v.data(), v.size(), -1.5, 1.5);
    CHECK(bitwise_equal(v, expected));
}

TEST_CASE("sym_matvec matches the naive product") {
    Rng rng(21);
    const std::size_t n = 37;
    std::vector<double> A(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = rng.uniform(-1.0, 1.0);
            A[i * n + j] = v;
            A[j * n + i] = v;
        }
    }
    const std::vector<double> x = random_vec(n, rng);
    std::vector<double> y(n), expected(n);
    kernels::sym_matvec(A.data(), n, x.data(), y.data());
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += A[i * n + j] * x[j];
        }
        expected[i] = acc;
    }
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(y[i] == doctest::Approx(expected[i]).epsilon(1e-13));
    }
}

TEST_CASE("gemm_nn and gemm_nt match naive references") {
    Rng rng(31);
    const std::size_t m = 13, n = 11, k = 7;
    const std::vector<double> A = random_vec(m * k, rng);
    const std::vector<double> Bnn = random_vec(k * n, rng);
    const std::vector<double> Bnt = random_vec(n * k, rng);

    std::vector<double> C(m * n), expected(m * n);
    kernels::gemm_nn(A.data(), Bnn.data(), C.data(), m, n, k);
    naive_gemm_nn(A.data(), Bnn.data(), expected.data(), m, n, k);
    for (std::size_t i = 0; i < m * n; ++i) {
        CHECK(C[i] == doctest::Approx(expected[i]).epsilon(1e-13));
    }

    kernels::gemm_nt(A.data(), Bnt.data(), C.data(), m, n, k);
    naive_gemm_nt(A.data(), Bnt.data(), expected.data(), m, n, k);
    for (std::size_t i = 0; i < m * n; ++i) {
        CHECK(C[i] == doctest::Approx(expected[i]).epsilon(1e-13));
    }
}

TEST_CASE("syrk_tn equals Z^T Z and is exactly symmetric") {
    Rng rng(41);
    const std::size_t s = 19, g = 23;
    const std::vector<double> Z = random_vec(s * g, rng);
    std::vector<double> C(g * g);
    kernels::syrk_tn(Z.data(), s, g, C.data());
    for (std::size_t a = 0; a < g; ++a) {
        for (std::size_t b = 0; b < g; ++b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < s; ++i) {
                acc += Z[i * g + a] * Z[i * g + b];
            }
            CHECK(C[a * g + b] == doctest::Approx(acc).epsilon(1e-13));
        }
    }
    // Symmetry must be bitwise, not approximate: the covariance builder
    // writes this buffer straight into a SymmetricMatrix.
    for (std::size_t a = 0; a < g; ++a) {
        for (std::size_t b = 0; b < g; ++b) {
            CHECK(C[a * g + b] == C[b * g + a]);
        }
    }
}

TEST_CASE("parallel kernels produce bitwise-identical results to serial") {
    Rng rng(51);
    const std::size_t big = 40000; // above the dispatch threshold

    SUBCASE("vector kernels") {
        const std::vector<double> x = random_vec(big, rng);
        const std::vector<double> y = random_vec(big, rng);

        CHECK(kernels::serial::dot(x.data(), y.data(), big) ==
              kernels::parallel::dot(x.data(), y.data(), big));
        CHECK(kernels::serial::abs_sum(x.data(), big) ==
              kernels::parallel::abs_sum(x.data(), big));

        std::vector<double> a = y, b = y;
        kernels::serial::axpy(1.7, x.data(), a.data(), big);
        kernels::parallel::axpy(1.7, x.data(), b.data(), big);
        CHECK(bitwise_equal(a, b));

        a = x;
        b = x;
        kernels::serial::scale(0.37, a.data(), big);
        kernels::parallel::scale(0.37, b.data(), big);
        CHECK(bitwise_equal(a, b));

        std::vector<double> ca(big), cb(big);
        kernels::serial::clamp(x.data(), ca.data(), big, -0.5, 0.5);
        kernels::parallel::clamp(x.data(), cb.data(), big, -0.5, 0.5);
        CHECK(bitwise_equal(ca, cb));
    }

    SUBCASE("matrix kernels") {
        const std::size_t m = 30, n = 30, k = 30;
        const std::vector<double> A = random_vec(m * k, rng);
        const std::vector<double> B = random_vec(k * n, rng);
        const std::vector<double> Bt = random_vec(n * k, rng);
        std::vector<double> c1(m * n), c2(m * n);

        kernels::serial::gemm_nn(A.data(), B.data(), c1.data(), m, n, k);
        kernels::parallel::gemm_nn(A.data(), B.data(), c2.data(), m, n, k);
        CHECK(bitwise_equal(c1, c2));

        kernels::serial::gemm_nt(A.data(), Bt.data(), c1.data(), m, n, k);
        kernels::parallel::gemm_nt(A.data(), Bt.data(), c2.data(), m, n, k);
        CHECK(bitwise_equal(c1, c2));

        const std::size_t sx = 40, gx = 35;
        const std::vector<double> Z = random_vec(sx * gx, rng);
        std::vector<double> s1(gx * gx), s2(gx * gx);
        kernels::serial::syrk_tn(Z.data(), sx, gx, s1.data());
        kernels::parallel::syrk_tn(Z.data(), sx, gx, s2.data());
        CHECK(bitwise_equal(s1, s2));

        std::vector<double> Sfull(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                const double v = rng.uniform(-1.0, 1.0);
                Sfull[i * n + j] = v;
                Sfull[j * n + i] = v;
            }
        }
        const std::vector<double> x = random_vec(n, rng);
        std::vector<double> y1(n), y2(n);
        kernels::serial::sym_matvec(Sfull.data(), n, x.data(), y1.data());
        kernels::parallel::sym_matvec(Sfull.data(), n, x.data(), y2.data());
        CHECK(bitwise_equal(y1, y2));
    }
}

TEST_CASE("dispatch entry points agree bitwise with the serial reference") {
    Rng rng(61);
    const std::size_t n = 20000;
    const std::vector<double> x = random_vec(n, rng);
    const std::vector<double> y = random_vec(n, rng);
    CHECK(kernels::dot(x.data(), y.data(), n) ==
          kernels::serial::dot(x.data(), y.data(), n));
    CHECK(kernels::abs_sum(x.data(), n) ==
          kernels::serial::abs_sum(x.data(), n));

    std::vector<double> a = y, b = y;
    kernels::axpy(-0.9, x.data(), a.data(), n);
    kernels::serial::axpy(-0.9, x.data(), b.data(), n);
    CHECK(bitwise_equal(a, b));
}
