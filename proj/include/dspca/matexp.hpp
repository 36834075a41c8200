#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dspca/lanczos.hpp"
#include "dspca/types.hpp"

namespace dspca {

enum class Backend { full, pade, partial };

Backend parse_backend(std::string_view name);
std::string to_string(Backend backend);

struct PadeConfig {
    int p = 6;
    int q = 6; // must equal p
    // Squaring stops once ||S||/2^s is below this. R_66 is already accurate
    // to ~1e-17 at norm 1/2, while every extra squaring doubles the rounding
    // error, so tighter targets only lose precision.
    double scale_target = 0.5;
    int max_squarings = 64;
};

struct PadeResult {
    SymmetricMatrix value;
    int squarings = 0;
};

// exp(S) through a full eigendecomposition: V diag(e^{d_i}) V^T.
SymmetricMatrix exp_full(const SymmetricMatrix& S);

// exp(S) through the (p,p) Pade approximant with scaling and squaring.
SymmetricMatrix exp_pade(const SymmetricMatrix& S, const PadeConfig& cfg = {});
PadeResult exp_pade_detailed(const SymmetricMatrix& S,
                             const PadeConfig& cfg = {});

// Left-hand side of the truncation test for the j = lambda_top.size()
// largest eigenvalues of an order-n matrix. Internally shifted by
// lambda_top[0]; the expression only depends on eigenvalue differences.
double truncation_lhs(const std::vector<double>& lambda_top, std::size_t n);

// True when j leading eigenpairs suffice for a delta-accurate gradient:
// truncation_lhs(lambda_top, n) <= delta / (rho * n).
bool truncation_condition(const std::vector<double>& lambda_top, std::size_t n,
                          double delta, double rho);

struct PartialOptions {
    double switchover_fraction = 0.25; // j > fraction * n -> dense fallback
    LanczosOptions lanczos;
};

// Truncated normalized gradient: grows j from j_start until the truncation
// test passes, falling back to the dense path beyond the switchover or on
// eigensolver non-convergence. rho == 0 makes the test vacuous (the error
// functional |<G~ - G, Y>| is zero on an empty box), so j_start suffices.
TruncatedGradient gradient_partial(const SymmetricMatrix& S, double delta,
                                   double rho, std::size_t j_start = 1,
                                   const PartialOptions& options = {});

// Normalized gradient exp(S)/Tr exp(S) by the selected backend. All
// backends shift the spectrum before exponentiating, so the result is finite
// whenever S is. top_eigenvalues is filled by the full and partial paths;
// the Pade path never forms a decomposition and leaves it empty.
TruncatedGradient normalized_gradient(const SymmetricMatrix& S,
                                      Backend backend, double delta,
                                      double rho, std::size_t j_start = 1,
                                      const PartialOptions& options = {});

} // namespace dspca
