#pragma once

#include <cstddef>
#include <cstdint>

#include "dspca/types.hpp"

namespace dspca {

struct LanczosOptions {
    std::size_t max_basis = 0;   // 0 -> min(n, max(4k + 40, 80))
    double tolerance = 1e-9;     // relative residual tolerance
    std::uint64_t seed = 0x15bd5c0de5ca1ab1ULL;
};

struct LanczosResult {
    std::vector<double> eigenvalues; // descending, k entries
    Matrix eigenvectors;             // n x k, columns match eigenvalues
    bool converged = false;
    std::size_t matvecs = 0;
    std::size_t basis_size = 0;
};

// Computes the k algebraically largest eigenpairs of S by the Lanczos
// iteration with full reorthogonalization. Deterministic: the start vector
// comes from the seed in the options, never from global state. When the
// basis budget runs out the best available Ritz pairs are returned with
// converged=false; callers decide whether to fall back to a dense solve.
LanczosResult lanczos_top(const SymmetricMatrix& S, std::size_t k,
                          const LanczosOptions& options = {});

} // namespace dspca
