#include "dspca/synthetic.hpp"

#include <cmath>
#include <string>

#include "dspca/errors.hpp"
#include "dspca/kernels.hpp"

namespace dspca::synthetic {

SymmetricMatrix wishart_covariance(std::size_t n, std::size_t samples,
                                   std::uint64_t seed) {
    if (n == 0 || samples == 0) {
        throw InvalidInputError("wishart_covariance: empty dimensions");
    }
    Rng rng(seed);
    Matrix G(samples, n);
    double* g = G.data();
    for (std::size_t i = 0; i < samples * n; ++i) {
        g[i] = rng.normal();
    }
    SymmetricMatrix out(n);
    kernels::syrk_tn(G.data(), samples, n, out.data());
    kernels::scale(1.0 / static_cast<double>(samples), out.data(), n * n);
    return out;
}

SymmetricMatrix planted_spikes(
    std::size_t n, const std::vector<std::vector<std::size_t>>& supports,
    const std::vector<double>& strengths, double noise_scale,
    std::size_t samples, std::uint64_t seed) {
    if (supports.size() != strengths.size()) {
        throw InvalidInputError(
            "planted_spikes: supports and strengths differ in length");
    }
    SymmetricMatrix A = wishart_covariance(n, samples, seed);
    kernels::scale(noise_scale, A.data(), n * n);
    for (std::size_t t = 0; t < supports.size(); ++t) {
        const auto& support = supports[t];
        if (support.empty()) {
            throw InvalidInputError("planted_spikes: empty support");
        }
        const double w = 1.0 / std::sqrt(static_cast<double>(support.size()));
        for (const std::size_t i : support) {
            for (const std::size_t j : support) {
                if (i >= n || j >= n) {
                    throw InvalidInputError(
                        "planted_spikes: support index out of range");
                }
                A.data()[i * n + j] += strengths[t] * w * w;
            }
        }
    }
    return A;
}

MixtureSample gaussian_mixture(const Matrix& centers, std::size_t per_cluster,
                               double sigma, std::uint64_t seed) {
    const std::size_t k = centers.rows();
    const std::size_t f = centers.cols();
    if (k == 0 || per_cluster == 0) {
        throw InvalidInputError("gaussian_mixture: empty request");
    }
    Rng rng(seed);
    MixtureSample out;
    out.points = Matrix(k * per_cluster, f);
    out.labels.reserve(k * per_cluster);
    std::size_t row = 0;
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t i = 0; i < per_cluster; ++i, ++row) {
            for (std::size_t j = 0; j < f; ++j) {
                out.points(row, j) = centers(c, j) + sigma * rng.normal();
            }
            out.labels.push_back(static_cast<int>(c));
        }
    }
    return out;
}

ExpressionDataset random_expression(std::size_t samples, std::size_t genes,
                                    std::uint64_t seed) {
    if (samples == 0 || genes == 0) {
        throw InvalidInputError("random_expression: empty dimensions");
    }
    Rng rng(seed);
    ExpressionDataset d;
    d.values = Matrix(samples, genes);
    double* v = d.values.data();
    for (std::size_t i = 0; i < samples * genes; ++i) {
        v[i] = std::exp(rng.normal()); // lognormal: positive, log-friendly
    }
    d.gene_ids.reserve(genes);
    for (std::size_t j = 0; j < genes; ++j) {
        d.gene_ids.push_back("g" + std::to_string(j + 1));
    }
    d.provenance = "synthetic";
    return d;
}

} // namespace dspca::synthetic
