// Serial reference kernels against their OpenMP counterparts, plus the three
// matrix-exponential gradient backends at solver-realistic sizes.

#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "dspca/kernels.hpp"
#include "dspca/matexp.hpp"
#include "dspca/rng.hpp"
#include "dspca/synthetic.hpp"
#include "dspca/types.hpp"

namespace {

using dspca::Rng;

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(n);
    for (double& vi : v) {
        vi = rng.uniform(-1.0, 1.0);
    }
    return v;
}

// --------------------------------------------------------------------------
// Vector reductions.

template <double (*Dot)(const double*, const double*, std::size_t)>
void bm_dot(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::vector<double> x = random_vector(n, 1);
    const std::vector<double> y = random_vector(n, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Dot(x.data(), y.data(), n));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK_TEMPLATE(bm_dot, dspca::kernels::serial::dot)
    ->Name("dot/serial")->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK_TEMPLATE(bm_dot, dspca::kernels::parallel::dot)
    ->Name("dot/parallel")->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

template <void (*Axpy)(double, const double*, double*, std::size_t)>
void bm_axpy(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::vector<double> x = random_vector(n, 3);
    std::vector<double> y = random_vector(n, 4);
    for (auto _ : state) {
        Axpy(1.000001, x.data(), y.data(), n);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK_TEMPLATE(bm_axpy, dspca::kernels::serial::axpy)
    ->Name("axpy/serial")->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK_TEMPLATE(bm_axpy, dspca::kernels::parallel::axpy)
    ->Name("axpy/parallel")->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

// --------------------------------------------------------------------------
// Matrix kernels.

template <void (*Matvec)(const double*, std::size_t, const double*, double*)>
void bm_sym_matvec(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Rng rng(5);
    dspca::SymmetricMatrix A(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            A.set(i, j, rng.uniform(-1.0, 1.0));
        }
    }
    const std::vector<double> x = random_vector(n, 6);
    std::vector<double> y(n);
    for (auto _ : state) {
        Matvec(A.data(), n, x.data(), y.data());
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n * n));
}
BENCHMARK_TEMPLATE(bm_sym_matvec, dspca::kernels::serial::sym_matvec)
    ->Name("sym_matvec/serial")->Arg(128)->Arg(512)->Arg(1024);
BENCHMARK_TEMPLATE(bm_sym_matvec, dspca::kernels::parallel::sym_matvec)
    ->Name("sym_matvec/parallel")->Arg(128)->Arg(512)->Arg(1024);

template <void (*Gemm)(const double*, const double*, double*, std::size_t,
                       std::size_t, std::size_t)>
void bm_gemm_nn(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::vector<double> a = random_vector(n * n, 7);
    const std::vector<double> b = random_vector(n * n, 8);
    std::vector<double> c(n * n);
    for (auto _ : state) {
        Gemm(a.data(), b.data(), c.data(), n, n, n);
        benchmark::DoNotOptimize(c.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n * n * n));
}
BENCHMARK_TEMPLATE(bm_gemm_nn, dspca::kernels::serial::gemm_nn)
    ->Name("gemm_nn/serial")->Arg(64)->Arg(128)->Arg(256);
BENCHMARK_TEMPLATE(bm_gemm_nn, dspca::kernels::parallel::gemm_nn)
    ->Name("gemm_nn/parallel")->Arg(64)->Arg(128)->Arg(256);

template <void (*Syrk)(const double*, std::size_t, std::size_t, double*)>
void bm_syrk_tn(benchmark::State& state) {
    const std::size_t g = static_cast<std::size_t>(state.range(0));
    const std::size_t s = g / 2 + 8;
    const std::vector<double> z = random_vector(s * g, 9);
    std::vector<double> c(g * g);
    for (auto _ : state) {
        Syrk(z.data(), s, g, c.data());
        benchmark::DoNotOptimize(c.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(s * g * g));
}
BENCHMARK_TEMPLATE(bm_syrk_tn, dspca::kernels::serial::syrk_tn)
    ->Name("syrk_tn/serial")->Arg(64)->Arg(128)->Arg(256);
BENCHMARK_TEMPLATE(bm_syrk_tn, dspca::kernels::parallel::syrk_tn)
    ->Name("syrk_tn/parallel")->Arg(64)->Arg(128)->Arg(256);

// --------------------------------------------------------------------------
// Gradient backends on a solver-scale smoothed matrix.

void bm_gradient(benchmark::State& state, dspca::Backend backend) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const dspca::SymmetricMatrix A =
        dspca::synthetic::wishart_covariance(n, n, 42 + n);
    // The solver feeds (A + U) / mu; mimic the scale without running it.
    const double mu = 0.1 / (2.0 * std::log(static_cast<double>(n)));
    dspca::SymmetricMatrix S(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            S.set(i, j, A(i, j) / mu);
        }
    }
    const double delta = 0.025;
    const double rho = 0.25 * A.max_abs();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            dspca::normalized_gradient(S, backend, delta, rho));
    }
}
BENCHMARK_CAPTURE(bm_gradient, full, dspca::Backend::full)
    ->Name("gradient/full")->Arg(100)->Arg(200)->Arg(400)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_gradient, pade, dspca::Backend::pade)
    ->Name("gradient/pade")->Arg(100)->Arg(200)->Arg(400)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_gradient, partial, dspca::Backend::partial)
    ->Name("gradient/partial")->Arg(100)->Arg(200)->Arg(400)
    ->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
