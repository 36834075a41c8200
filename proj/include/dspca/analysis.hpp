#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dspca/spca.hpp"
#include "dspca/types.hpp"

namespace dspca {

struct Partition {
    std::vector<int> assignments; // one label per sample, in [0, num_clusters)
    int num_clusters = 0;
};

struct KmeansResult {
    Partition partition;
    Matrix centers; // k x f
    double wcss = 0.0;
    std::vector<double> wcss_history; // per Lloyd iteration, winning restart
};

// Lloyd's algorithm with k-means++ seeding; best of `restarts` runs by
// within-cluster sum of squares (ties keep the earlier restart).
KmeansResult kmeans_detailed(const Matrix& points, int k, std::uint64_t seed,
                             int restarts = 10);
Partition kmeans(const Matrix& points, int k, std::uint64_t seed,
                 int restarts = 10);

// (p + q) / C(n,2): fraction of sample pairs on which the partitions agree.
double rand_index(const Partition& P, const Partition& Q);

struct SeparationReport {
    Matrix centers;   // k x f centroids per label
    Matrix distances; // k x k pairwise centroid distances
    double min_distance = 0.0;
};

SeparationReport separation(const Matrix& points, const Partition& labels);

struct ClusterReport {
    Partition partition;
    std::optional<double> rand_index; // set when true labels are supplied
    SeparationReport separation;
};

struct RankedFeature {
    int rank = 0; // 1-based
    std::size_t index = 0;
    std::string gene_id;
    double loading = 0.0;
};

// Support entries by |loading| descending, ties broken by lower index.
std::vector<RankedFeature> rank_features(const SparseFactor& factor,
                                         const std::vector<std::string>& gene_ids);

// Number of gene ids shared between the top m of ours and the top m of an
// externally ranked list (for published-ranking overlap reports).
std::size_t overlap_top_m(const std::vector<RankedFeature>& ours,
                          const std::vector<std::string>& external_ranked_ids,
                          std::size_t m);

} // namespace dspca
