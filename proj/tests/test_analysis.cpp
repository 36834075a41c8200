#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "dspca/analysis.hpp"
#include "dspca/errors.hpp"
#include "dspca/rng.hpp"
#include "dspca/synthetic.hpp"

using namespace dspca;

namespace {

Partition labels_of(std::vector<int> v, int k) {
    Partition p;
    p.assignments = std::move(v);
    p.num_clusters = k;
    return p;
}

bool same_bipartition(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    bool direct = true;
    bool flipped = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        direct = direct && a[i] == b[i];
        flipped = flipped && a[i] == 1 - b[i];
    }
    return direct || flipped;
}

} // namespace

TEST_CASE("kmeans recovers two well separated pairs") {
    const Matrix pts(4, 2, {0.0, 0.0,
                            0.1, 0.0,
                            10.0, 10.0,
                            10.1, 10.0});
    const KmeansResult r = kmeans_detailed(pts, 2, 7);
    CHECK(same_bipartition(r.partition.assignments, {0, 0, 1, 1}));
    CHECK(r.partition.num_clusters == 2);
    CHECK(r.wcss == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(r.centers.rows() == 2);
    CHECK(r.centers.cols() == 2);
}

TEST_CASE("k equal to the sample count drives wcss to exactly zero") {
    Rng rng(13);
    Matrix pts(5, 3);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 3; ++j) pts(i, j) = rng.uniform(-2, 2);
    const KmeansResult r = kmeans_detailed(pts, 5, 3);
    CHECK(r.wcss == 0.0);
    std::vector<int> seen = r.partition.assignments;
    std::sort(seen.begin(), seen.end());
    CHECK(seen == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("three gaussian blobs are recovered across seeds") {
    const Matrix centers(3, 2, {0.0, 0.0,
                                10.0, 0.0,
                                0.0, 10.0});
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const synthetic::MixtureSample mix =
            synthetic::gaussian_mixture(centers, 30, 1.0, seed);
        const Partition got = kmeans(mix.points, 3, seed * 31 + 1);
        const Partition truth = labels_of(mix.labels, 3);
        CHECK(rand_index(got, truth) >= 0.99);
    }
}

TEST_CASE("kmeans is bitwise deterministic for a fixed seed") {
    const synthetic::MixtureSample mix = synthetic::gaussian_mixture(
        Matrix(2, 2, {0.0, 0.0, 4.0, 4.0}), 25, 1.5, 5);
    const KmeansResult a = kmeans_detailed(mix.points, 2, 99, 4);
    const KmeansResult b = kmeans_detailed(mix.points, 2, 99, 4);
    CHECK(a.partition.assignments == b.partition.assignments);
    CHECK(a.wcss == b.wcss);
    CHECK(std::memcmp(a.centers.data(), b.centers.data(),
                      sizeof(double) * 4) == 0);
}

TEST_CASE("wcss history is non-increasing over Lloyd iterations") {
    const synthetic::MixtureSample mix = synthetic::gaussian_mixture(
        Matrix(2, 3, {0.0, 0.0, 0.0, 3.0, 3.0, 3.0}), 40, 2.0, 17);
    const KmeansResult r = kmeans_detailed(mix.points, 2, 23, 1);
    REQUIRE(!r.wcss_history.empty());
    for (std::size_t i = 1; i < r.wcss_history.size(); ++i) {
        const double prev = r.wcss_history[i - 1];
        CHECK(r.wcss_history[i] <= prev + 1e-10 * (1.0 + prev));
    }
    CHECK(r.wcss == doctest::Approx(r.wcss_history.back()).epsilon(1e-12));
}

TEST_CASE("kmeans validates k and restarts") {
    const Matrix pts(3, 1, {0.0, 1.0, 2.0});
    CHECK_THROWS_AS(kmeans(pts, 0, 1), InvalidInputError);
    CHECK_THROWS_AS(kmeans(pts, 4, 1), InvalidInputError);
    CHECK_THROWS_AS(kmeans(pts, 2, 1, 0), InvalidInputError);
    CHECK_THROWS_AS(kmeans(Matrix(), 1, 1), InvalidInputError);
}

TEST_CASE("coincident points cannot fill distinct clusters") {
    const Matrix pts(4, 2, {1.0, 1.0,
                            1.0, 1.0,
                            1.0, 1.0,
                            1.0, 1.0});
    CHECK_THROWS_AS(kmeans(pts, 2, 11), DegenerateInputError);
}

TEST_CASE("rand index hand values") {
    CHECK(rand_index(labels_of({0, 0, 1, 1}, 2),
                     labels_of({0, 0, 1, 1}, 2)) == 1.0);
    // Pairs: (0,1) split by Q, (2,3) split by Q, (0,2),(0,3),(1,2),(1,3)
    // differ in both; 2 of 6 pairs agree.
    CHECK(rand_index(labels_of({0, 0, 1, 1}, 2),
                     labels_of({0, 1, 0, 1}, 2)) == 1.0 / 3.0);
    // Relabeling clusters does not move the index.
    CHECK(rand_index(labels_of({0, 0, 1, 1}, 2),
                     labels_of({1, 1, 0, 0}, 2)) == 1.0);
}

TEST_CASE("rand index is symmetric and validates input") {
    Rng rng(31);
    std::vector<int> a(9), b(9);
    for (std::size_t i = 0; i < 9; ++i) {
        a[i] = static_cast<int>(rng.uniform_index(3));
        b[i] = static_cast<int>(rng.uniform_index(2));
    }
    const Partition P = labels_of(a, 3);
    const Partition Q = labels_of(b, 2);
    CHECK(rand_index(P, Q) == rand_index(Q, P));

    CHECK_THROWS_AS(rand_index(labels_of({0}, 1), labels_of({0}, 1)),
                    InvalidInputError);
    CHECK_THROWS_AS(
        rand_index(labels_of({0, 1}, 2), labels_of({0, 1, 0}, 2)),
        InvalidInputError);
}

TEST_CASE("random balanced bipartitions score near one half") {
    Rng rng(47);
    std::vector<int> truth(100);
    for (std::size_t i = 50; i < 100; ++i) truth[i] = 1;
    const Partition T = labels_of(truth, 2);
    double mean = 0.0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        std::vector<int> shuffled = truth;
        for (std::size_t i = shuffled.size() - 1; i > 0; --i) {
            std::swap(shuffled[i], shuffled[rng.uniform_index(i + 1)]);
        }
        mean += rand_index(labels_of(shuffled, 2), T);
    }
    mean /= trials;
    // Two independent balanced halves agree on ~half the pairs.
    CHECK(std::fabs(mean - 0.5) <= 0.03);
}

TEST_CASE("separation reports exact centroid distances") {
    const Matrix pts(4, 2, {0.0, 0.0,
                            0.0, 0.0,
                            3.0, 4.0,
                            3.0, 4.0});
    const SeparationReport rep =
        separation(pts, labels_of({0, 0, 1, 1}, 2));
    CHECK(rep.centers(0, 0) == 0.0);
    CHECK(rep.centers(1, 0) == 3.0);
    CHECK(rep.centers(1, 1) == 4.0);
    CHECK(rep.distances(0, 1) == 5.0);
    CHECK(rep.distances(1, 0) == 5.0);
    CHECK(rep.distances(0, 0) == 0.0);
    CHECK(rep.min_distance == 5.0);
}

TEST_CASE("separation edge cases") {
    const Matrix pts(3, 2, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
    CHECK(separation(pts, labels_of({0, 0, 0}, 1)).min_distance == 0.0);

    CHECK_THROWS_WITH_AS(separation(pts, labels_of({0, 0, 1}, 3)),
                         doctest::Contains("empty"), InvalidInputError);
    CHECK_THROWS_AS(separation(pts, labels_of({0, 0}, 2)),
                    InvalidInputError);
    CHECK_THROWS_AS(separation(pts, labels_of({0, 0, 5}, 2)),
                    InvalidInputError);
}

TEST_CASE("feature ranking orders the support by loading magnitude") {
    SparseFactor f;
    f.loadings = {0.1, -0.9, 0.5};
    f.support = {0, 1, 2};
    f.cardinality = 3;
    const std::vector<std::string> ids = {"g1", "g2", "g3"};
    const std::vector<RankedFeature> r = rank_features(f, ids);
    REQUIRE(r.size() == 3);
    CHECK(r[0].rank == 1);
    CHECK(r[0].gene_id == "g2");
    CHECK(r[0].loading == -0.9);
    CHECK(r[0].index == 1);
    CHECK(r[1].gene_id == "g3");
    CHECK(r[1].loading == 0.5);
    CHECK(r[2].gene_id == "g1");
    CHECK(r[2].rank == 3);
}

TEST_CASE("feature ranking breaks magnitude ties by lower index") {
    SparseFactor f;
    f.loadings = {0.0, 0.5, 0.0, -0.5, 0.5};
    f.support = {1, 3, 4};
    f.cardinality = 3;
    const std::vector<RankedFeature> r =
        rank_features(f, {"a", "b", "c", "d", "e"});
    REQUIRE(r.size() == 3);
    CHECK(r[0].gene_id == "b");
    CHECK(r[1].gene_id == "d");
    CHECK(r[2].gene_id == "e");

    SparseFactor wrong = f;
    CHECK_THROWS_AS(rank_features(wrong, {"a", "b"}), InvalidInputError);
}

TEST_CASE("top-m overlap counts shared gene ids") {
    SparseFactor f;
    f.loadings = {0.2, 0.9, -0.6};
    f.support = {0, 1, 2};
    f.cardinality = 3;
    const std::vector<RankedFeature> ours =
        rank_features(f, {"g1", "g2", "g3"}); // g2, g3, g1
    const std::vector<std::string> external = {"g3", "g9", "g2"};
    CHECK(overlap_top_m(ours, external, 1) == 0); // {g2} vs {g3}
    CHECK(overlap_top_m(ours, external, 2) == 1); // {g2,g3} vs {g3,g9}
    CHECK(overlap_top_m(ours, external, 3) == 2);
    CHECK(overlap_top_m(ours, external, 5) == 2); // truncates to list ends
    CHECK(overlap_top_m(ours, {}, 3) == 0);
}
