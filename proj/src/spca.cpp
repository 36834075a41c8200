#include "dspca/spca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dspca/errors.hpp"
#include "dspca/lapack.hpp"

namespace dspca {

namespace {

void require_unit(const std::vector<double>& x, const char* where) {
    double nrm = 0.0;
    for (const double xi : x) {
        nrm += xi * xi;
    }
    if (std::fabs(std::sqrt(nrm) - 1.0) > 1e-8) {
        throw InvalidInputError(std::string(where) +
                                ": vector is not unit length");
    }
}

double quadratic_form(const SymmetricMatrix& A, const std::vector<double>& x) {
    const std::size_t n = A.dim();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            row += A(i, j) * x[j];
        }
        acc += x[i] * row;
    }
    return acc;
}

// Largest-magnitude entry positive; ties stay with the lowest index.
void canonicalize_sign(std::vector<double>& v) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (std::fabs(v[i]) > std::fabs(v[arg])) {
            arg = i;
        }
    }
    if (v[arg] < 0.0) {
        for (double& vi : v) {
            vi = -vi;
        }
    }
}

} // namespace

SparseFactor extract_factor(const SymmetricMatrix& X_star,
                            const SymmetricMatrix& A, double threshold,
                            double rho) {
    if (X_star.dim() != A.dim()) {
        throw InvalidInputError("extract_factor: X and A dimensions differ");
    }
    if (!(threshold > 0.0) || threshold >= 1.0) {
        throw InvalidInputError("extract_factor: threshold must lie in (0, 1)");
    }
    if (X_star.frobenius_norm() <= 1e-14) {
        throw DegenerateInputError("extract_factor: X is numerically zero");
    }
    const std::size_t n = X_star.dim();
    const SpectralDecomposition eig = lapack::sym_eig(X_star);

    SparseFactor factor;
    factor.rho_used = rho;
    factor.degenerate =
        n > 1 && eig.eigenvalues[0] - eig.eigenvalues[1] <=
                     1e-8 * std::max(std::fabs(eig.eigenvalues[0]), 1e-300);

    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = eig.eigenvectors(i, 0);
    }
    double vmax = 0.0;
    for (const double vi : v) {
        vmax = std::max(vmax, std::fabs(vi));
    }
    double nrm = 0.0;
    for (double& vi : v) {
        if (std::fabs(vi) < threshold * vmax) {
            vi = 0.0;
        }
        nrm += vi * vi;
    }
    nrm = std::sqrt(nrm);
    for (double& vi : v) {
        vi /= nrm;
    }
    canonicalize_sign(v);

    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] != 0.0) {
            factor.support.push_back(i);
        }
    }
    factor.cardinality = factor.support.size();
    factor.loadings = std::move(v);
    factor.explained_variance_fraction = explained_variance(A, factor.loadings);
    return factor;
}

double explained_variance(const SymmetricMatrix& A,
                          const std::vector<double>& x) {
    if (x.size() != A.dim()) {
        throw InvalidInputError("explained_variance: dimension mismatch");
    }
    require_unit(x, "explained_variance");
    const double tr = A.trace();
    if (std::fabs(tr) < 1e-300) {
        throw InvalidInputError("explained_variance: matrix has zero trace");
    }
    return quadratic_form(A, x) / tr;
}

SymmetricMatrix deflate(const SymmetricMatrix& A,
                        const std::vector<double>& x) {
    if (x.size() != A.dim()) {
        throw InvalidInputError("deflate: dimension mismatch");
    }
    require_unit(x, "deflate");
    const double q = quadratic_form(A, x);
    SymmetricMatrix out = A;
    const std::size_t n = A.dim();
    double* o = out.data();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            o[i * n + j] -= q * x[i] * x[j];
        }
    }
    out.symmetrize();
    return out;
}

CardinalitySearch solve_for_cardinality_detailed(const SymmetricMatrix& A,
                                                 std::size_t k_target,
                                                 const SolverConfig& cfg,
                                                 const RhoSearchConfig& search) {
    const std::size_t n = A.dim();
    if (k_target < 1 || k_target > n) {
        throw InvalidInputError("solve_for_cardinality: k_target out of range");
    }
    if (search.max_evals == 0) {
        throw InvalidInputError(
            "solve_for_cardinality: max_evals must be >= 1");
    }
    const double hi_bound = A.max_abs();
    if (hi_bound <= 0.0) {
        throw DegenerateInputError("solve_for_cardinality: zero matrix");
    }

    double lo = search.rho_min_fraction * hi_bound;
    double hi = hi_bound;

    CardinalitySearch best;
    bool have_best = false;
    auto better = [&](const SparseFactor& cand) {
        if (!have_best) {
            return true;
        }
        const auto dist = [&](const SparseFactor& f) {
            return f.cardinality > k_target ? f.cardinality - k_target
                                            : k_target - f.cardinality;
        };
        if (dist(cand) != dist(best.factor)) {
            return dist(cand) < dist(best.factor);
        }
        const bool cand_under = cand.cardinality <= k_target;
        const bool best_under = best.factor.cardinality <= k_target;
        if (cand_under != best_under) {
            return cand_under;
        }
        return cand.explained_variance_fraction >
               best.factor.explained_variance_fraction;
    };

    for (std::size_t eval = 0; eval < search.max_evals; ++eval) {
        const double rho = std::sqrt(lo * hi); // geometric midpoint
        PenalizedProblem prob{A, rho};
        SolveResult sol = solve(prob, cfg);
        SparseFactor factor =
            extract_factor(sol.X_star, A, search.threshold, rho);
        const std::size_t card = factor.cardinality;
        if (better(factor)) {
            best.factor = std::move(factor);
            best.solve = std::move(sol);
            have_best = true;
        }
        best.evaluations = eval + 1;
        if (card == k_target) {
            break;
        }
        // Larger rho shrinks the support.
        if (card > k_target) {
            lo = rho;
        } else {
            hi = rho;
        }
    }
    best.factor.approximate_cardinality = best.factor.cardinality != k_target;
    return best;
}

SparseFactor solve_for_cardinality(const SymmetricMatrix& A,
                                   std::size_t k_target,
                                   const SolverConfig& cfg,
                                   const RhoSearchConfig& search) {
    return solve_for_cardinality_detailed(A, k_target, cfg, search).factor;
}

std::pair<std::vector<double>, double> brute_force_oracle(
    const SymmetricMatrix& A, std::size_t k) {
    const std::size_t n = A.dim();
    if (n > 25) {
        throw InvalidInputError(
            "brute_force_oracle: n > 25 would enumerate too many supports");
    }
    if (k < 1 || k > n) {
        throw InvalidInputError("brute_force_oracle: k out of range");
    }

    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
        idx[i] = i;
    }
    std::vector<double> best_vec(n, 0.0);
    double best_val = -std::numeric_limits<double>::infinity();

    while (true) {
        SymmetricMatrix sub(k);
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b <= a; ++b) {
                sub.set(a, b, A(idx[a], idx[b]));
            }
        }
        const SpectralDecomposition eig = lapack::sym_eig(sub);
        if (eig.eigenvalues[0] > best_val) {
            best_val = eig.eigenvalues[0];
            std::fill(best_vec.begin(), best_vec.end(), 0.0);
            for (std::size_t a = 0; a < k; ++a) {
                best_vec[idx[a]] = eig.eigenvectors(a, 0);
            }
        }
        // Lexicographic next combination.
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) {
            --i;
        }
        if (i == 0) {
            break;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
    canonicalize_sign(best_vec);
    return {best_vec, best_val};
}

FactorSequence compute_factors(const SymmetricMatrix& A,
                               const std::vector<std::size_t>& k_targets,
                               const SolverConfig& cfg,
                               const RhoSearchConfig& search) {
    if (k_targets.empty()) {
        throw InvalidInputError("compute_factors: no cardinality targets");
    }
    const double total_trace = A.trace();
    FactorSequence seq;
    SymmetricMatrix current = A;
    for (const std::size_t k : k_targets) {
        CardinalitySearch found =
            solve_for_cardinality_detailed(current, k, cfg, search);
        // Rescale so every factor's fraction refers to the original total
        // variance; the per-solve value was relative to the deflated trace.
        found.factor.explained_variance_fraction *=
            current.trace() / total_trace;
        current = deflate(current, found.factor.loadings);
        seq.factors.push_back(std::move(found.factor));
        seq.deflation_history.push_back(current);
        seq.solves.push_back(std::move(found.solve));
    }
    return seq;
}

} // namespace dspca
