#include "dspca/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <omp.h>

#include "dspca/threading.hpp"

namespace dspca::kernels {

namespace serial {

void sym_matvec(const double* A, std::size_t n, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = A + i * n;
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

void gemm_nt(const double* A, const double* B, double* C,
             std::size_t m, std::size_t n, std::size_t k) {
    for (std::size_t i = 0; i < m; ++i) {
        const double* a = A + i * k;
        double* c = C + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            const double* b = B + j * k;
            double acc = 0.0;
            for (std::size_t l = 0; l < k; ++l) acc += a[l] * b[l];
            c[j] = acc;
        }
    }
}

void gemm_nn(const double* A, const double* B, double* C,
             std::size_t m, std::size_t n, std::size_t k) {
    // i-l-j loop order keeps B accesses contiguous.
    for (std::size_t i = 0; i < m; ++i) {
        double* c = C + i * n;
        std::fill(c, c + n, 0.0);
        const double* a = A + i * k;
        for (std::size_t l = 0; l < k; ++l) {
            const double al = a[l];
            const double* b = B + l * n;
            for (std::size_t j = 0; j < n; ++j) c[j] += al * b[j];
        }
    }
}

void syrk_tn(const double* Z, std::size_t s, std::size_t g, double* C) {
    std::fill(C, C + g * g, 0.0);
    for (std::size_t r = 0; r < s; ++r) {
        const double* z = Z + r * g;
        for (std::size_t i = 0; i < g; ++i) {
            const double zi = z[i];
            double* c = C + i * g;
            for (std::size_t j = i; j < g; ++j) c[j] += zi * z[j];
        }
    }
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < i; ++j) C[i * g + j] = C[j * g + i];
}

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double abs_sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i]);
    return acc;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void clamp(const double* x, double* y, std::size_t n, double lo, double hi) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::min(hi, std::max(lo, x[i]));
}

} // namespace serial

namespace parallel {

namespace {

int thread_count() { return threading::max_threads(); }

// Deterministic reduction: static schedule fixes each thread's chunk, and
// partials are combined in thread order.
template <typename F>
double reduce(std::size_t n, F&& body) {
    const int nt = thread_count();
    std::vector<double> partial(static_cast<std::size_t>(nt), 0.0);
#pragma omp parallel num_threads(nt)
    {
        const int t = omp_get_thread_num();
        double local = 0.0;
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
            local += body(static_cast<std::size_t>(i));
        partial[static_cast<std::size_t>(t)] = local;
    }
    double acc = 0.0;
    for (double p : partial) acc += p;
    return acc;
}

} // namespace

void sym_matvec(const double* A, std::size_t n, const double* x, double* y) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const double* row = A + static_cast<std::size_t>(i) * n;
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

void gemm_nt(const double* A, const double* B, double* C,
             std::size_t m, std::size_t n, std::size_t k) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
        const double* a = A + static_cast<std::size_t>(i) * k;
        double* c = C + static_cast<std::size_t>(i) * n;
        for (std::size_t j = 0; j < n; ++j) {
            const double* b = B + j * k;
            double acc = 0.0;
            for (std::size_t l = 0; l < k; ++l) acc += a[l] * b[l];
            c[j] = acc;
        }
    }
}

void gemm_nn(const double* A, const double* B, double* C,
             std::size_t m, std::size_t n, std::size_t k) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
        double* c = C + static_cast<std::size_t>(i) * n;
        std::fill(c, c + n, 0.0);
        const double* a = A + static_cast<std::size_t>(i) * k;
        for (std::size_t l = 0; l < k; ++l) {
            const double al = a[l];
            const double* b = B + l * n;
            for (std::size_t j = 0; j < n; ++j) c[j] += al * b[j];
        }
    }
}

void syrk_tn(const double* Z, std::size_t s, std::size_t g, double* C) {
    // Rows of C are independent; each thread owns a row range. Same
    // per-entry summation order (r ascending) as the serial kernel.
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(g); ++i) {
        double* c = C + static_cast<std::size_t>(i) * g;
        std::fill(c + i, c + g, 0.0);
        for (std::size_t r = 0; r < s; ++r) {
            const double* z = Z + r * g;
            const double zi = z[i];
            for (std::size_t j = static_cast<std::size_t>(i); j < g; ++j) c[j] += zi * z[j];
        }
    }
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(g); ++i)
        for (std::size_t j = 0; j < static_cast<std::size_t>(i); ++j)
            C[static_cast<std::size_t>(i) * g + j] = C[j * g + static_cast<std::size_t>(i)];
}

double dot(const double* x, const double* y, std::size_t n) {
    return reduce(n, [&](std::size_t i) { return x[i] * y[i]; });
}

double abs_sum(const double* x, std::size_t n) {
    return reduce(n, [&](std::size_t i) { return std::fabs(x[i]); });
}

void axpy(double a, const double* x, double* y, std::size_t n) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) y[i] += a * x[i];
}

void scale(double a, double* x, std::size_t n) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) x[i] *= a;
}

void clamp(const double* x, double* y, std::size_t n, double lo, double hi) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        y[i] = std::min(hi, std::max(lo, x[i]));
}

} // namespace parallel

void sym_matvec(const double* A, std::size_t n, const double* x, double* y) {
    if (threading::use_parallel(n * n))
        parallel::sym_matvec(A, n, x, y);
    else
        serial::sym_matvec(A, n, x, y);
}

void gemm_nt(const double* A, const double* B, double* C,
             std::size_t m, std::size_t n, std::size_t k) {
    if (threading::use_parallel(m * n * k))
        parallel::gemm_nt(A, B, C, m, n, k);
    else
        serial::gemm_nt(A, B, C, m, n, k);
}

void gemm_nn(const double* A, const double* B, double* C,
             std::size_t m, std::size_t n, std::size_t k) {
    if (threading::use_parallel(m * n * k))
        parallel::gemm_nn(A, B, C, m, n, k);
    else
        serial::gemm_nn(A, B, C, m, n, k);
}

void syrk_tn(const double* Z, std::size_t s, std::size_t g, double* C) {
    if (threading::use_parallel(s * g * g))
        parallel::syrk_tn(Z, s, g, C);
    else
        serial::syrk_tn(Z, s, g, C);
}

double dot(const double* x, const double* y, std::size_t n) {
    return threading::use_parallel(n) ? parallel::dot(x, y, n) : serial::dot(x, y, n);
}

double abs_sum(const double* x, std::size_t n) {
    return threading::use_parallel(n) ? parallel::abs_sum(x, n) : serial::abs_sum(x, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    if (threading::use_parallel(n))
        parallel::axpy(a, x, y, n);
    else
        serial::axpy(a, x, y, n);
}

void scale(double a, double* x, std::size_t n) {
    if (threading::use_parallel(n))
        parallel::scale(a, x, n);
    else
        serial::scale(a, x, n);
}

void clamp(const double* x, double* y, std::size_t n, double lo, double hi) {
    if (threading::use_parallel(n))
        parallel::clamp(x, y, n, lo, hi);
    else
        serial::clamp(x, y, n, lo, hi);
}

} // namespace dspca::kernels
