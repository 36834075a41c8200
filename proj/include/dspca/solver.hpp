#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dspca/matexp.hpp"
#include "dspca/types.hpp"

namespace dspca {

struct PenalizedProblem {
    SymmetricMatrix A;
    double rho = 0.0; // entrywise penalty; 0 degenerates to plain lambda_max
};

struct SolverConfig {
    double epsilon = 1e-1;              // target duality gap
    std::optional<double> delta;        // gradient-error budget; default eps/4
    std::optional<double> mu_override;  // smoothing parameter override
    std::size_t max_iterations = 50000;
    Backend backend = Backend::partial;
    std::size_t gap_check_period = 20;
    PartialOptions partial;
};

struct TraceRecord {
    std::size_t iteration = 0;
    double gap = 0.0; // most recent checkpoint gap
    int eigs_used = 0;
    double elapsed_seconds = 0.0;
};

struct SolveResult {
    SymmetricMatrix U_star;
    SymmetricMatrix X_star;
    double dual_value = 0.0;
    double primal_value = 0.0;
    double gap = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    double min_checkpoint_gap = 0.0; // smallest gap seen at any checkpoint
    double mu = 0.0;                 // resolved smoothing parameter
    double delta = 0.0;              // resolved gradient budget
    std::vector<TraceRecord> trace;
    std::vector<int> eigs_history; // per gradient call, in call order
};

// f_mu(U) = mu log Tr exp((A+U)/mu) - mu log n, evaluated shift-stably.
double smoothed_objective(const SymmetricMatrix& U, const PenalizedProblem& prob,
                          double mu);

// Normalized gradient of f_mu at U through the configured backend; j_start
// seeds the partial backend's eigenvalue count.
TruncatedGradient smoothed_gradient(const SymmetricMatrix& U,
                                    const PenalizedProblem& prob, double mu,
                                    const SolverConfig& cfg,
                                    std::size_t j_start = 1);

// Entrywise clamp to the box |W_ij| <= rho.
SymmetricMatrix project_box(const SymmetricMatrix& W, double rho);

// lambda_max(A+U) - (Tr(AX) - rho * sum |X_ij|); validates feasibility.
double duality_gap(const SymmetricMatrix& U, const SymmetricMatrix& X,
                   const PenalizedProblem& prob);

// Nesterov's smooth minimization of f_mu over the box, from U = 0. Returns
// the best checkpoint seen; non-convergence within max_iterations is flagged
// on the result rather than thrown.
SolveResult solve(const PenalizedProblem& prob, const SolverConfig& cfg = {});

} // namespace dspca
