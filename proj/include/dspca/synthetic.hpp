#pragma once

#include <cstdint>
#include <vector>

#include "dspca/data.hpp"
#include "dspca/rng.hpp"
#include "dspca/types.hpp"

namespace dspca::synthetic {

// Wishart-style covariance G^T G / samples with Gaussian G (samples x n).
SymmetricMatrix wishart_covariance(std::size_t n, std::size_t samples,
                                   std::uint64_t seed);

// Wishart noise plus rank-one spikes: noise_scale * W + sum_i strength_i
// v_i v_i^T, each v_i uniform on its support (entries 1/sqrt(|support|)).
SymmetricMatrix planted_spikes(
    std::size_t n, const std::vector<std::vector<std::size_t>>& supports,
    const std::vector<double>& strengths, double noise_scale,
    std::size_t samples, std::uint64_t seed);

// Points drawn around the given centers (per_cluster each, isotropic sigma);
// generating labels returned alongside.
struct MixtureSample {
    Matrix points;
    std::vector<int> labels;
};
MixtureSample gaussian_mixture(const Matrix& centers, std::size_t per_cluster,
                               double sigma, std::uint64_t seed);

// Strictly positive expression-like intensities for preprocessing tests.
ExpressionDataset random_expression(std::size_t samples, std::size_t genes,
                                    std::uint64_t seed);

} // namespace dspca::synthetic
