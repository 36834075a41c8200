#include "dspca/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "dspca/errors.hpp"
#include "dspca/rng.hpp"

namespace dspca {

namespace {

double sq_dist(const double* a, const double* b, std::size_t f) {
    double acc = 0.0;
    for (std::size_t j = 0; j < f; ++j) {
        const double d = a[j] - b[j];
        acc += d * d;
    }
    return acc;
}

// k-means++ seeding: D^2 sampling after a uniform first pick.
Matrix seed_centers(const Matrix& points, int k, Rng& rng) {
    const std::size_t s = points.rows();
    const std::size_t f = points.cols();
    Matrix centers(static_cast<std::size_t>(k), f);
    std::vector<std::size_t> chosen;
    chosen.push_back(rng.uniform_index(s));
    std::vector<double> d2(s);
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < s; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const std::size_t idx : chosen) {
                best = std::min(best, sq_dist(points.row(i), points.row(idx), f));
            }
            d2[i] = best;
            total += best;
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double run = 0.0;
            pick = s - 1;
            for (std::size_t i = 0; i < s; ++i) {
                run += d2[i];
                if (run >= target) {
                    pick = i;
                    break;
                }
            }
        } else {
            // All remaining points coincide with a center; take the lowest
            // index not already used so centers stay distinct when possible.
            for (std::size_t i = 0; i < s; ++i) {
                if (std::find(chosen.begin(), chosen.end(), i) ==
                    chosen.end()) {
                    pick = i;
                    break;
                }
            }
        }
        chosen.push_back(pick);
    }
    for (int c = 0; c < k; ++c) {
        const double* src = points.row(chosen[static_cast<std::size_t>(c)]);
        std::copy(src, src + f, centers.row(static_cast<std::size_t>(c)));
    }
    return centers;
}

struct LloydRun {
    std::vector<int> assign;
    Matrix centers;
    double wcss = 0.0;
    std::vector<double> history;
};

LloydRun lloyd(const Matrix& points, int k, Rng rng) {
    const std::size_t s = points.rows();
    const std::size_t f = points.cols();
    const std::size_t ku = static_cast<std::size_t>(k);
    LloydRun run;
    run.centers = seed_centers(points, k, rng);
    run.assign.assign(s, -1);
    std::vector<std::size_t> counts(ku);

    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        double wcss = 0.0;
        for (std::size_t i = 0; i < s; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < ku; ++c) {
                const double d = sq_dist(points.row(i), run.centers.row(c), f);
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<int>(c);
                }
            }
            if (run.assign[i] != best) {
                run.assign[i] = best;
                changed = true;
            }
            wcss += best_d;
        }
        run.wcss = wcss;
        run.history.push_back(wcss);
        if (!changed && iter > 0) {
            break;
        }

        std::fill(counts.begin(), counts.end(), 0);
        Matrix sums(ku, f);
        for (std::size_t i = 0; i < s; ++i) {
            const std::size_t c = static_cast<std::size_t>(run.assign[i]);
            ++counts[c];
            for (std::size_t j = 0; j < f; ++j) {
                sums(c, j) += points(i, j);
            }
        }
        for (std::size_t c = 0; c < ku; ++c) {
            if (counts[c] == 0) {
                // Re-seed an empty cluster at the point farthest from its
                // current center.
                std::size_t far = 0;
                double far_d = -1.0;
                for (std::size_t i = 0; i < s; ++i) {
                    const std::size_t ci = static_cast<std::size_t>(run.assign[i]);
                    const double d =
                        sq_dist(points.row(i), run.centers.row(ci), f);
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                if (far_d <= 0.0) {
                    throw DegenerateInputError(
                        "kmeans: cannot populate " + std::to_string(k) +
                        " clusters (coincident points)");
                }
                std::copy(points.row(far), points.row(far) + f,
                          run.centers.row(c));
                counts[c] = 0; // center moved; next sweep refills it
            } else {
                for (std::size_t j = 0; j < f; ++j) {
                    run.centers(c, j) =
                        sums(c, j) / static_cast<double>(counts[c]);
                }
            }
        }
    }
    return run;
}

} // namespace

KmeansResult kmeans_detailed(const Matrix& points, int k, std::uint64_t seed,
                             int restarts) {
    const std::size_t s = points.rows();
    if (k < 1 || static_cast<std::size_t>(k) > s) {
        throw InvalidInputError("kmeans: k must lie in [1, samples]");
    }
    if (restarts < 1) {
        throw InvalidInputError("kmeans: restarts must be >= 1");
    }
    Rng root(seed);
    KmeansResult best;
    bool have = false;
    for (int r = 0; r < restarts; ++r) {
        LloydRun run = lloyd(points, k, root.fork(static_cast<std::uint64_t>(r)));
        if (!have || run.wcss < best.wcss) {
            best.partition.assignments = run.assign;
            best.partition.num_clusters = k;
            best.centers = std::move(run.centers);
            best.wcss = run.wcss;
            best.wcss_history = std::move(run.history);
            have = true;
        }
    }
    return best;
}

Partition kmeans(const Matrix& points, int k, std::uint64_t seed,
                 int restarts) {
    return kmeans_detailed(points, k, seed, restarts).partition;
}

double rand_index(const Partition& P, const Partition& Q) {
    const std::size_t n = P.assignments.size();
    if (n != Q.assignments.size()) {
        throw InvalidInputError("rand_index: partitions have different sizes");
    }
    if (n < 2) {
        throw InvalidInputError("rand_index: needs at least two samples");
    }
    std::size_t agree = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same_p = P.assignments[i] == P.assignments[j];
            const bool same_q = Q.assignments[i] == Q.assignments[j];
            if (same_p == same_q) {
                ++agree;
            }
        }
    }
    return static_cast<double>(agree) /
           (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

SeparationReport separation(const Matrix& points, const Partition& labels) {
    const std::size_t s = points.rows();
    const std::size_t f = points.cols();
    if (labels.assignments.size() != s) {
        throw InvalidInputError("separation: label count != sample count");
    }
    const int k = labels.num_clusters;
    if (k < 1) {
        throw InvalidInputError("separation: partition has no clusters");
    }
    const std::size_t ku = static_cast<std::size_t>(k);
    SeparationReport rep;
    rep.centers = Matrix(ku, f);
    std::vector<std::size_t> counts(ku, 0);
    for (std::size_t i = 0; i < s; ++i) {
        const int a = labels.assignments[i];
        if (a < 0 || a >= k) {
            throw InvalidInputError("separation: label out of range");
        }
        ++counts[static_cast<std::size_t>(a)];
        for (std::size_t j = 0; j < f; ++j) {
            rep.centers(static_cast<std::size_t>(a), j) += points(i, j);
        }
    }
    for (std::size_t c = 0; c < ku; ++c) {
        if (counts[c] == 0) {
            throw InvalidInputError("separation: cluster " + std::to_string(c) +
                                    " is empty");
        }
        for (std::size_t j = 0; j < f; ++j) {
            rep.centers(c, j) /= static_cast<double>(counts[c]);
        }
    }
    rep.distances = Matrix(ku, ku);
    rep.min_distance =
        ku > 1 ? std::numeric_limits<double>::infinity() : 0.0;
    for (std::size_t a = 0; a < ku; ++a) {
        for (std::size_t b = a + 1; b < ku; ++b) {
            const double d =
                std::sqrt(sq_dist(rep.centers.row(a), rep.centers.row(b), f));
            rep.distances(a, b) = d;
            rep.distances(b, a) = d;
            rep.min_distance = std::min(rep.min_distance, d);
        }
    }
    return rep;
}

std::vector<RankedFeature> rank_features(
    const SparseFactor& factor, const std::vector<std::string>& gene_ids) {
    if (gene_ids.size() != factor.loadings.size()) {
        throw InvalidInputError("rank_features: id list length mismatch");
    }
    std::vector<std::size_t> order = factor.support;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return std::fabs(factor.loadings[a]) >
                                std::fabs(factor.loadings[b]);
                     });
    std::vector<RankedFeature> out;
    out.reserve(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        out.push_back({static_cast<int>(r + 1), order[r], gene_ids[order[r]],
                       factor.loadings[order[r]]});
    }
    return out;
}

std::size_t overlap_top_m(const std::vector<RankedFeature>& ours,
                          const std::vector<std::string>& external_ranked_ids,
                          std::size_t m) {
    std::set<std::string> mine;
    for (std::size_t i = 0; i < std::min(m, ours.size()); ++i) {
        mine.insert(ours[i].gene_id);
    }
    std::size_t shared = 0;
    for (std::size_t i = 0; i < std::min(m, external_ranked_ids.size()); ++i) {
        shared += mine.count(external_ranked_ids[i]);
    }
    return shared;
}

} // namespace dspca
