#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dspca/solver.hpp"
#include "dspca/types.hpp"

namespace dspca {

struct SparseFactor {
    std::vector<double> loadings;     // unit norm, zeros off the support
    std::vector<std::size_t> support; // ascending indices of nonzeros
    std::size_t cardinality = 0;
    double explained_variance_fraction = 0.0;
    double rho_used = 0.0;
    bool degenerate = false;             // tied leading eigenvalues of X*
    bool approximate_cardinality = false; // rho search missed the target
};

struct FactorSequence {
    std::vector<SparseFactor> factors;
    std::vector<SymmetricMatrix> deflation_history; // matrix after each factor
    std::vector<SolveResult> solves;                // solve behind each factor
};

struct RhoSearchConfig {
    std::size_t max_evals = 24;     // solver calls allowed in the bisection
    double rho_min_fraction = 1e-4; // lower bracket as fraction of max |A_ij|
    double threshold = 1e-3;        // relative zero-loading threshold
};

// Leading eigenvector of the primal certificate, thresholded at
// threshold * max |v_i|, renormalized, sign-fixed so the largest-magnitude
// loading is positive.
SparseFactor extract_factor(const SymmetricMatrix& X_star,
                            const SymmetricMatrix& A, double threshold,
                            double rho);

// x^T A x / Tr(A).
double explained_variance(const SymmetricMatrix& A,
                          const std::vector<double>& x);

// Hotelling deflation A - (x^T A x) x x^T.
SymmetricMatrix deflate(const SymmetricMatrix& A, const std::vector<double>& x);

struct CardinalitySearch {
    SparseFactor factor;
    SolveResult solve; // the solve that produced the chosen factor
    std::size_t evaluations = 0;
};

// Geometric bisection on rho targeting the requested cardinality; keeps the
// best candidate seen since cardinality is only approximately monotone.
CardinalitySearch solve_for_cardinality_detailed(const SymmetricMatrix& A,
                                                 std::size_t k_target,
                                                 const SolverConfig& cfg = {},
                                                 const RhoSearchConfig& search = {});
SparseFactor solve_for_cardinality(const SymmetricMatrix& A,
                                   std::size_t k_target,
                                   const SolverConfig& cfg = {},
                                   const RhoSearchConfig& search = {});

// Exact optimum of the cardinality-constrained problem by support
// enumeration; n <= 25 enforced. Returns the maximizer and its value.
std::pair<std::vector<double>, double> brute_force_oracle(
    const SymmetricMatrix& A, std::size_t k);

// Repeated solve_for_cardinality + deflate; factor i is computed on the
// (i-1)-times deflated matrix. Explained fractions are reported against the
// trace of the original matrix so they telescope.
FactorSequence compute_factors(const SymmetricMatrix& A,
                               const std::vector<std::size_t>& k_targets,
                               const SolverConfig& cfg = {},
                               const RhoSearchConfig& search = {});

} // namespace dspca
