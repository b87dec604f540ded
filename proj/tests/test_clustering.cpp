#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "hgshift/clustering.hpp"
#include "testutil.hpp"

using namespace hgshift;
using Catch::Approx;

namespace {

/// Well-separated Gaussian blobs with labels.
PointSet gaussian_blobs(Index per_blob, const std::vector<std::array<double, 2>>& centers,
                        double sigma, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    PointSet ps;
    for (Index c = 0; c < centers.size(); ++c)
        for (Index i = 0; i < per_blob; ++i) {
            ps.points.push_back({centers[c][0] + noise(rng), centers[c][1] + noise(rng)});
            ps.labels.push_back(static_cast<int>(c));
        }
    return ps;
}

}  // namespace

TEST_CASE("gen_crescents splits points evenly with five labels") {
    PointSet ps = gen_crescents(600, 0.0, 42);
    REQUIRE(ps.points.size() == 600);
    REQUIRE(ps.labels.size() == 600);
    std::array<int, 5> counts{};
    for (int l : ps.labels) {
        REQUIRE(l >= 0);
        REQUIRE(l < 5);
        ++counts[l];
    }
    for (int c : counts) REQUIRE(c == 120);

    PointSet small = gen_crescents(203, 1.0, 7);
    REQUIRE(small.points.size() == 203);
    REQUIRE_THROWS_AS(gen_crescents(10, 0.0, 1), std::invalid_argument);
}

TEST_CASE("gen_crescents is deterministic under the seed") {
    PointSet a = gen_crescents(200, 2.0, 99);
    PointSet b = gen_crescents(200, 2.0, 99);
    REQUIRE(a.points == b.points);
    REQUIRE(a.labels == b.labels);
    PointSet c = gen_crescents(200, 2.0, 100);
    REQUIRE(a.points != c.points);
}

TEST_CASE("knn hyperedges on three collinear points cover everything") {
    PointSet ps;
    ps.points = {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
    KnnHypergraph kg = knn_hyperedges(ps, 2);
    REQUIRE(kg.graph.edge_count() == 3);
    for (const auto& e : kg.graph.hyperedges) REQUIRE(e.members.size() == 3);
    REQUIRE(!validate(kg.graph).has_value());

    REQUIRE_THROWS_AS(knn_hyperedges(ps, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(knn_hyperedges(ps, 3), std::invalid_argument);
}

TEST_CASE("a member at the centroid gets membership one") {
    PointSet ps;
    // Point 0 sits exactly at the centroid of {0, 1, 2}.
    ps.points = {{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {50.0, 50.0}, {51.0, 50.0}};
    KnnHypergraph kg = knn_hyperedges(ps, 2);
    const auto& edge0 = kg.graph.hyperedges[0];
    REQUIRE(edge0.members.at(kg.vertex_of_point[0]) == 1.0);
}

TEST_CASE("far-separated blobs give a block-diagonal adjacency") {
    PointSet ps = gaussian_blobs(12, {{0.0, 0.0}, {100.0, 0.0}}, 0.5, 3);
    KnnHypergraph kg = knn_hyperedges(ps, 4);
    HyperedgeAdjacency m = build_adjacency(kg.graph);
    for (Index i = 0; i < 12; ++i)
        for (Index j = 12; j < 24; ++j) REQUIRE(m(i, j) == 0.0);
}

TEST_CASE("duplicate points collapse to one vertex") {
    PointSet ps;
    ps.points = {{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
    KnnHypergraph kg = knn_hyperedges(ps, 2);
    REQUIRE(kg.graph.vertex_count == 3);
    REQUIRE(kg.vertex_of_point[0] == kg.vertex_of_point[1]);
    REQUIRE(!validate(kg.graph).has_value());
}

TEST_CASE("merge_modes groups identical and near-identical modes") {
    auto m = HyperedgeAdjacency::from_dense({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}});
    ModeCertificate a = is_mode(SimplexVector::from_entries({0.5, 0.5, 0.0}), m);
    ModeCertificate b = is_mode(SimplexVector::from_entries({0.5 + 1e-10, 0.5 - 1e-10, 0.0}), m);
    ModeCertificate c = is_mode(unit_indicator(2, 3), m);

    MergedModes merged = merge_modes({a, b, c}, 0.1);
    REQUIRE(merged.representatives.size() == 2);
    REQUIRE(merged.group_of[0] == merged.group_of[1]);
    REQUIRE(merged.group_of[0] != merged.group_of[2]);
}

TEST_CASE("merge_modes never merges disjoint supports") {
    auto m = HyperedgeAdjacency::from_dense(
        {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
    ModeCertificate a = is_mode(SimplexVector::from_entries({0.5, 0.5, 0.0, 0.0}), m);
    ModeCertificate b = is_mode(SimplexVector::from_entries({0.0, 0.0, 0.5, 0.5}), m);
    MergedModes merged = merge_modes({a, b}, 0.1);
    REQUIRE(merged.representatives.size() == 2);
}

TEST_CASE("two seeds in one block converge to one merged mode") {
    auto m = HyperedgeAdjacency::from_dense({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    Hypergraph g = hgtest::triangle_hypergraph();
    ShiftResult r0 = hypergraph_shift(m, initial_vector(m, 0), g);
    ShiftResult r1 = hypergraph_shift(m, initial_vector(m, 1), g);
    MergedModes merged = merge_modes({r0.certificate, r1.certificate}, 0.1);
    REQUIRE(merged.representatives.size() == 1);
}

TEST_CASE("nmi scores partitions") {
    std::vector<int> a{0, 0, 1, 1, 2, 2};
    REQUIRE(nmi(a, a) == 1.0);

    std::vector<int> permuted{2, 2, 0, 0, 1, 1};
    REQUIRE(nmi(permuted, a) == Approx(1.0).margin(1e-12));

    // Independent labelings approach zero for large n.
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> lab(0, 4);
    std::vector<int> x(20000), y(20000);
    for (auto& v : x) v = lab(rng);
    for (auto& v : y) v = lab(rng);
    REQUIRE(nmi(x, y) < 0.01);

    REQUIRE(nmi(x, y) == nmi(y, x));
}

TEST_CASE("nmi handles outliers and degenerate partitions") {
    std::vector<int> pred{0, -1, 1, 1};
    std::vector<int> truth{0, 0, 1, 1};
    REQUIRE(nmi(pred, truth) == 1.0);  // outlier position excluded from both

    std::vector<int> single{0, 0, 0};
    REQUIRE(nmi(single, single) == 1.0);
    std::vector<int> split{0, 0, 1};
    REQUIRE(nmi(single, split) == 0.0);
    REQUIRE_THROWS_AS(nmi(std::vector<int>{0}, std::vector<int>{0, 1}),
                      std::invalid_argument);
}

TEST_CASE("clustering separates three blocks") {
    PointSet ps = gaussian_blobs(12, {{0.0, 0.0}, {60.0, 0.0}, {0.0, 60.0}}, 0.5, 11);
    ClusterConfig cfg;
    cfg.k = 4;
    PointClusterResult r = cluster_points(ps, cfg);
    REQUIRE(r.clustering.modes.size() == 3);
    REQUIRE(nmi(r.assignments, ps.labels) == 1.0);
}

TEST_CASE("a single dense clique forms one cluster with everything assigned") {
    PointSet ps = gaussian_blobs(16, {{0.0, 0.0}}, 0.5, 13);
    ClusterConfig cfg;
    cfg.k = 6;
    PointClusterResult r = cluster_points(ps, cfg);
    REQUIRE(r.clustering.modes.size() == 1);
    for (int a : r.assignments) REQUIRE(a == 0);
}

TEST_CASE("an isolated hyperedge is an outlier unless claimed by a neighbor") {
    // Two overlapping edges plus one fully isolated edge.
    Hypergraph g;
    g.vertex_count = 5;
    g.hyperedges.resize(3);
    g.hyperedges[0].members = {{0, 1.0}, {1, 1.0}};
    g.hyperedges[1].members = {{1, 1.0}, {2, 1.0}};
    g.hyperedges[2].members = {{3, 1.0}, {4, 1.0}};
    HyperedgeClustering hc = cluster(g);
    REQUIRE(hc.edge_cluster[0] == 0);
    REQUIRE(hc.edge_cluster[1] == 0);
    REQUIRE(hc.edge_cluster[2] == -1);
    REQUIRE(hc.vertex_cluster[3] == -1);
    REQUIRE(hc.vertex_cluster[4] == -1);
    REQUIRE(hc.vertex_cluster[1] == 0);
}

TEST_CASE("cluster assignment is invariant under point permutation") {
    PointSet ps = gaussian_blobs(10, {{0.0, 0.0}, {40.0, 0.0}}, 0.6, 17);
    ClusterConfig cfg;
    cfg.k = 4;
    PointClusterResult base = cluster_points(ps, cfg);

    std::vector<Index> perm(ps.points.size());
    std::iota(perm.begin(), perm.end(), Index{0});
    std::mt19937_64 rng(23);
    std::shuffle(perm.begin(), perm.end(), rng);
    PointSet shuffled;
    shuffled.points.resize(ps.points.size());
    shuffled.labels.resize(ps.points.size());
    for (Index i = 0; i < perm.size(); ++i) {
        shuffled.points[perm[i]] = ps.points[i];
        shuffled.labels[perm[i]] = ps.labels[i];
    }
    PointClusterResult moved = cluster_points(shuffled, cfg);

    std::vector<int> remapped(ps.points.size());
    for (Index i = 0; i < perm.size(); ++i) remapped[i] = moved.assignments[perm[i]];
    REQUIRE(nmi(remapped, base.assignments) == 1.0);
}

TEST_CASE("zero-noise crescents leave no point unassigned") {
    PointSet ps = gen_crescents(300, 0.0, 5);
    ClusterConfig cfg;
    cfg.k = 20;
    PointClusterResult r = cluster_points(ps, cfg);
    for (int a : r.assignments) REQUIRE(a >= 0);
    REQUIRE(nmi(r.assignments, ps.labels) >= 0.8);
}
