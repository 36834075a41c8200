#pragma once

#include <cstddef>

// Dense linear-algebra inner loops. Every kernel exists twice: a serial
// reference under kernels::serial and an OpenMP version under
// kernels::parallel. The unqualified entry points dispatch on problem size
// and the thread cap. Parallel reductions accumulate per-thread partials
// and combine them in thread order, so results are reproducible run to run
// for a fixed thread count.
namespace dspca::kernels {

namespace serial {

// y = A x for symmetric A (n x n, row-major full storage).
void sym_matvec(const double* A, std::size_t n, const double* x, double* y);

// C = A * B^T with A m x k, B n x k, C m x n (all row-major).
void gemm_nt(const double* A, const double* B, double* C,
             std::size_t m, std::size_t n, std::size_t k);

// C = A * B with A m x k, B k x n.
void gemm_nn(const double* A, const double* B, double* C,
             std::size_t m, std::size_t n, std::size_t k);

// C = Z^T Z with Z s x g; C is g x g, written symmetric.
void syrk_tn(const double* Z, std::size_t s, std::size_t g, double* C);

double dot(const double* x, const double* y, std::size_t n);
double abs_sum(const double* x, std::size_t n);

// y += a * x
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);

// y = clamp(x, lo, hi) elementwise.
void clamp(const double* x, double* y, std::size_t n, double lo, double hi);

} // namespace serial

namespace parallel {

void sym_matvec(const double* A, std::size_t n, const double* x, double* y);
void gemm_nt(const double* A, const double* B, double* C,
             std::size_t m, std::size_t n, std::size_t k);
void gemm_nn(const double* A, const double* B, double* C,
             std::size_t m, std::size_t n, std::size_t k);
void syrk_tn(const double* Z, std::size_t s, std::size_t g, double* C);
double dot(const double* x, const double* y, std::size_t n);
double abs_sum(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
void clamp(const double* x, double* y, std::size_t n, double lo, double hi);

} // namespace parallel

// Size-dispatched entry points.
void sym_matvec(const double* A, std::size_t n, const double* x, double* y);
void gemm_nt(const double* A, const double* B, double* C,
             std::size_t m, std::size_t n, std::size_t k);
void gemm_nn(const double* A, const double* B, double* C,
             std::size_t m, std::size_t n, std::size_t k);
void syrk_tn(const double* Z, std::size_t s, std::size_t g, double* C);
double dot(const double* x, const double* y, std::size_t n);
double abs_sum(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
void clamp(const double* x, double* y, std::size_t n, double lo, double hi);

} // namespace dspca::kernels
