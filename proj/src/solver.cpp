#include "dspca/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "dspca/errors.hpp"
#include "dspca/kernels.hpp"
#include "dspca/lanczos.hpp"
#include "dspca/lapack.hpp"

namespace dspca {

namespace {

void check_problem(const PenalizedProblem& prob) {
    if (!prob.A.all_finite()) {
        throw InvalidInputError("solver: covariance has non-finite entries");
    }
    if (!(prob.rho >= 0.0) || !std::isfinite(prob.rho)) {
        throw InvalidInputError("solver: rho must be finite and nonnegative");
    }
}

void check_same_dim(const SymmetricMatrix& U, const PenalizedProblem& prob,
                    const char* where) {
    if (U.dim() != prob.A.dim()) {
        throw InvalidInputError(std::string(where) + ": U is order " +
                                std::to_string(U.dim()) + " but A is order " +
                                std::to_string(prob.A.dim()));
    }
}

// (A + U) / mu.
SymmetricMatrix scaled_sum(const SymmetricMatrix& A, const SymmetricMatrix& U,
                           double mu) {
    const std::size_t n = A.dim();
    SymmetricMatrix S(n);
    const double inv = 1.0 / mu;
    const double* a = A.data();
    const double* u = U.data();
    double* s = S.data();
    for (std::size_t i = 0; i < n * n; ++i) {
        s[i] = (a[i] + u[i]) * inv;
    }
    return S;
}

double resolve_mu(const SolverConfig& cfg, std::size_t n) {
    if (cfg.mu_override) {
        if (!(*cfg.mu_override > 0.0)) {
            throw InvalidInputError("solver: mu_override must be positive");
        }
        return *cfg.mu_override;
    }
    return cfg.epsilon /
           (2.0 * std::log(static_cast<double>(std::max<std::size_t>(n, 2))));
}

double resolve_delta(const SolverConfig& cfg) {
    const double delta = cfg.delta.value_or(cfg.epsilon / 4.0);
    if (!(delta > 0.0) || delta >= cfg.epsilon) {
        throw InvalidInputError(
            "solver: delta must satisfy 0 < delta < epsilon");
    }
    return delta;
}

// lambda_max(S) estimated by the iterative eigensolver with one guard
// eigenvalue; dense fallback when it does not converge.
double lambda_max(const SymmetricMatrix& S) {
    const std::size_t k = std::min<std::size_t>(2, S.dim());
    const LanczosResult lz = lanczos_top(S, k);
    if (lz.converged) {
        return lz.eigenvalues[0];
    }
    return lapack::sym_eigenvalues(S)[0];
}

double primal_objective(const SymmetricMatrix& A, const SymmetricMatrix& X,
                        double rho) {
    const std::size_t nn = A.dim() * A.dim();
    const double tr_ax = kernels::dot(A.data(), X.data(), nn);
    return tr_ax - rho * kernels::abs_sum(X.data(), nn);
}

} // namespace

double smoothed_objective(const SymmetricMatrix& U,
                          const PenalizedProblem& prob, double mu) {
    check_problem(prob);
    check_same_dim(U, prob, "smoothed_objective");
    if (!(mu > 0.0)) {
        throw InvalidInputError("smoothed_objective: mu must be positive");
    }
    const std::size_t n = prob.A.dim();
    const std::vector<double> s =
        lapack::sym_eigenvalues(scaled_sum(prob.A, U, mu));
    double acc = 0.0;
    for (const double si : s) {
        acc += std::exp(si - s[0]);
    }
    return mu * s[0] + mu * std::log(acc) -
           mu * std::log(static_cast<double>(n));
}

TruncatedGradient smoothed_gradient(const SymmetricMatrix& U,
                                    const PenalizedProblem& prob, double mu,
                                    const SolverConfig& cfg,
                                    std::size_t j_start) {
    check_problem(prob);
    check_same_dim(U, prob, "smoothed_gradient");
    if (!(mu > 0.0)) {
        throw InvalidInputError("smoothed_gradient: mu must be positive");
    }
    return normalized_gradient(scaled_sum(prob.A, U, mu), cfg.backend,
                               resolve_delta(cfg), prob.rho, j_start,
                               cfg.partial);
}

SymmetricMatrix project_box(const SymmetricMatrix& W, double rho) {
    SymmetricMatrix out = W;
    kernels::clamp(W.data(), out.data(), W.dim() * W.dim(), -rho, rho);
    return out;
}

double duality_gap(const SymmetricMatrix& U, const SymmetricMatrix& X,
                   const PenalizedProblem& prob) {
    check_problem(prob);
    check_same_dim(U, prob, "duality_gap");
    check_same_dim(X, prob, "duality_gap");
    const double trace_err = std::fabs(X.trace() - 1.0);
    if (trace_err > 1e-8) {
        throw InvalidInputError(
            "duality_gap: X violates the trace constraint (|Tr X - 1| = " +
            std::to_string(trace_err) + ")");
    }
    if (U.max_abs() > prob.rho + 1e-12) {
        throw InvalidInputError(
            "duality_gap: U violates the box constraint (max |U_ij| = " +
            std::to_string(U.max_abs()) +
            " > rho = " + std::to_string(prob.rho) + ")");
    }
    const std::size_t n = prob.A.dim();
    SymmetricMatrix S(n);
    for (std::size_t i = 0; i < n * n; ++i) {
        S.data()[i] = prob.A.data()[i] + U.data()[i];
    }
    return lapack::sym_eigenvalues(S)[0] -
           primal_objective(prob.A, X, prob.rho);
}

SolveResult solve(const PenalizedProblem& prob, const SolverConfig& cfg) {
    check_problem(prob);
    if (!(cfg.epsilon > 0.0)) {
        throw InvalidInputError("solver: epsilon must be positive");
    }
    if (cfg.max_iterations == 0 || cfg.gap_check_period == 0) {
        throw InvalidInputError(
            "solver: max_iterations and gap_check_period must be >= 1");
    }
    const std::size_t n = prob.A.dim();
    const std::size_t nn = n * n;
    const double mu = resolve_mu(cfg, n);
    const double delta = resolve_delta(cfg);
    const double L = 1.0 / mu;
    const double rho = prob.rho;

    SolveResult res;
    res.mu = mu;
    res.delta = delta;
    res.min_checkpoint_gap = std::numeric_limits<double>::infinity();
    res.gap = std::numeric_limits<double>::infinity();

    SymmetricMatrix u(n);   // current iterate
    SymmetricMatrix y(n);   // gradient-step point
    SymmetricMatrix z(n);   // weighted-history point
    SymmetricMatrix acc(n); // sum of (i+1)/2 * G_i
    SymmetricMatrix dual_arg(n);

    std::size_t j_prev = 1;
    double latest_gap = std::numeric_limits<double>::infinity();
    const auto t0 = std::chrono::steady_clock::now();
    const auto elapsed = [&t0]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
            .count();
    };

    auto gradient_at = [&](const SymmetricMatrix& point) {
        TruncatedGradient g =
            normalized_gradient(scaled_sum(prob.A, point, mu), cfg.backend,
                                delta, rho, j_prev, cfg.partial);
        j_prev = std::max<std::size_t>(j_prev,
                                       static_cast<std::size_t>(g.eigs_used));
        res.eigs_history.push_back(g.eigs_used);
        return g;
    };

    for (std::size_t k = 0; k < cfg.max_iterations; ++k) {
        const TruncatedGradient grad = gradient_at(u);
        const int iter_eigs = grad.eigs_used;

        // y_k = P_Q(u_k - G_k / L)
        for (std::size_t i = 0; i < nn; ++i) {
            y.data()[i] = u.data()[i] - grad.matrix.data()[i] / L;
        }
        kernels::clamp(y.data(), y.data(), nn, -rho, rho);
        if (!y.all_finite()) {
            throw NumericalFailureError(
                "solver: non-finite iterate at iteration " + std::to_string(k));
        }

        const bool last = k + 1 == cfg.max_iterations;
        if (k % cfg.gap_check_period == 0 || last) {
            const TruncatedGradient gy = gradient_at(y);
            const double primal = primal_objective(prob.A, gy.matrix, rho);
            for (std::size_t i = 0; i < nn; ++i) {
                dual_arg.data()[i] = prob.A.data()[i] + y.data()[i];
            }
            const double dual = lambda_max(dual_arg);
            const double gap = dual - primal;
            if (!std::isfinite(gap)) {
                throw NumericalFailureError(
                    "solver: non-finite duality gap at iteration " +
                    std::to_string(k));
            }
            latest_gap = gap;
            res.min_checkpoint_gap = std::min(res.min_checkpoint_gap, gap);
            if (gap < res.gap) {
                res.gap = gap;
                res.dual_value = dual;
                res.primal_value = primal;
                res.U_star = y;
                res.X_star = gy.matrix;
            }
            res.trace.push_back({k, latest_gap, iter_eigs, elapsed()});
            res.iterations = k + 1;
            if (res.gap <= cfg.epsilon) {
                res.converged = true;
                return res;
            }
        } else {
            res.trace.push_back({k, latest_gap, iter_eigs, elapsed()});
            res.iterations = k + 1;
        }

        // z_k = P_Q(-(1/L) sum_{i<=k} (i+1)/2 G_i)
        kernels::axpy(0.5 * static_cast<double>(k + 1),
                      grad.matrix.data(), acc.data(), nn);
        for (std::size_t i = 0; i < nn; ++i) {
            z.data()[i] = -acc.data()[i] / L;
        }
        kernels::clamp(z.data(), z.data(), nn, -rho, rho);

        // u_{k+1} = 2/(k+3) z_k + (k+1)/(k+3) y_k
        const double a = 2.0 / static_cast<double>(k + 3);
        const double b =
            static_cast<double>(k + 1) / static_cast<double>(k + 3);
        for (std::size_t i = 0; i < nn; ++i) {
            u.data()[i] = a * z.data()[i] + b * y.data()[i];
        }
    }

    res.converged = res.gap <= cfg.epsilon;
    return res;
}

} // namespace dspca
