#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dspca/matexp.hpp"
#include "dspca/solver.hpp"

namespace dspca {

struct BenchConfig {
    std::vector<std::size_t> dims{50, 100, 200};
    std::vector<Backend> backends{Backend::full, Backend::pade,
                                  Backend::partial};
    double rho = 1.0;
    double epsilon = 1e-1;
    std::size_t max_iterations = 200; // capped: timing, not convergence
    std::uint64_t seed = 42;
    bool parallel = false;
};

struct BenchCell {
    std::size_t dim = 0;
    Backend backend = Backend::full;
    double seconds = 0.0;
    double avg_eig_fraction = 0.0;
    double sd_eig_fraction = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

// One capped solve on a seeded Wishart covariance per (dim, backend) cell.
std::vector<BenchCell> run_bench(const BenchConfig& cfg);

// Wire format: dim,backend,seconds,avg_eig_fraction,sd_eig_fraction.
void write_bench_csv(const std::string& path,
                     const std::vector<BenchCell>& cells);

} // namespace dspca
