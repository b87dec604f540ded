#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "hgshift/adjacency.hpp"
#include "hgshift/common.hpp"
#include "hgshift/io.hpp"
#include "hgshift/shift.hpp"

namespace hgshift {

// ---------------------------------------------------------------------------
// Synthetic data
// ---------------------------------------------------------------------------

/// Five interleaved half-annuli ("five crescents") with ground-truth labels,
/// points split evenly, plus additive per-coordinate Gaussian noise of the
/// given standard deviation. Deterministic under seed.
inline PointSet gen_crescents(Index n_points, double noise_sigma, std::uint64_t seed) {
    if (n_points < 50) throw std::invalid_argument("gen_crescents needs at least 50 points");
    if (noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be nonnegative");

    constexpr double kRadius = 12.0;
    constexpr double kSpacing = 12.0;   // horizontal shift between crescents
    constexpr double kLift = 6.0;       // baseline of the downward crescents

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 3.14159265358979323846);
    std::normal_distribution<double> noise(0.0, noise_sigma > 0.0 ? noise_sigma : 1.0);

    PointSet ps;
    for (int c = 0; c < 5; ++c) {
        Index count = n_points / 5 + (static_cast<Index>(c) < n_points % 5 ? 1 : 0);
        const double cx = kSpacing * c;
        const bool up = (c % 2 == 0);
        for (Index i = 0; i < count; ++i) {
            double t = angle(rng);
            double x = cx + kRadius * std::cos(t);
            double y = up ? kRadius * std::sin(t) : kLift - kRadius * std::sin(t);
            if (noise_sigma > 0.0) {
                x += noise(rng);
                y += noise(rng);
            }
            ps.points.push_back({x, y});
            ps.labels.push_back(c);
        }
    }
    return ps;
}

// ---------------------------------------------------------------------------
// kNN hypergraph construction
// ---------------------------------------------------------------------------

/// Hypergraph built from a point set plus the vertex bookkeeping the
/// clustering driver needs (duplicate coordinates collapse to one vertex).
struct KnnHypergraph {
    Hypergraph graph;
    double sigma = 0.0;                  // the bandwidth actually used
    std::vector<Index> vertex_of_point;  // point index -> vertex index
    std::vector<std::array<double, 2>> vertex_coords;
};

/// One hyperedge per point: the point and its k nearest neighbors.
/// Memberships are Gaussian in the distance to the hyperedge centroid,
/// rescaled so the closest member sits at 1; the weight is the mean pairwise
/// Gaussian similarity among members. sigma <= 0 selects the bandwidth
/// automatically as the mean kNN distance.
inline KnnHypergraph knn_hyperedges(const PointSet& ps, Index k, double sigma = 0.0) {
    const Index n = ps.points.size();
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    if (k >= n) throw std::invalid_argument("k must be smaller than the point count");

    KnnHypergraph out;
    out.vertex_of_point.resize(n);
    std::map<std::pair<double, double>, Index> seen;
    for (Index i = 0; i < n; ++i) {
        auto key = std::make_pair(ps.points[i][0], ps.points[i][1]);
        auto it = seen.find(key);
        if (it == seen.end()) {
            seen.emplace(key, out.vertex_coords.size());
            out.vertex_of_point[i] = out.vertex_coords.size();
            out.vertex_coords.push_back(ps.points[i]);
        } else {
            out.vertex_of_point[i] = it->second;
        }
    }
    out.graph.vertex_count = out.vertex_coords.size();

    // k nearest neighbors per point, ties broken by index.
    std::vector<std::vector<Index>> knn(n);
    double dist_sum = 0.0;
    Index dist_count = 0;
    for (Index i = 0; i < n; ++i) {
        std::vector<std::pair<double, Index>> cand;
        cand.reserve(n - 1);
        for (Index j = 0; j < n; ++j)
            if (j != i) cand.emplace_back(detail::sq_dist(ps.points[i], ps.points[j]), j);
        std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
        knn[i].reserve(k);
        for (Index t = 0; t < k; ++t) {
            knn[i].push_back(cand[t].second);
            dist_sum += std::sqrt(cand[t].first);
            ++dist_count;
        }
    }
    out.sigma = sigma > 0.0 ? sigma : dist_sum / static_cast<double>(dist_count);
    if (out.sigma <= 0.0) out.sigma = 1.0;  // all points coincide
    const double s2 = out.sigma * out.sigma;

    for (Index i = 0; i < n; ++i) {
        std::vector<Index> members{out.vertex_of_point[i]};
        for (Index j : knn[i]) members.push_back(out.vertex_of_point[j]);
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());

        std::array<double, 2> centroid{0.0, 0.0};
        for (Index v : members) {
            centroid[0] += out.vertex_coords[v][0];
            centroid[1] += out.vertex_coords[v][1];
        }
        centroid[0] /= static_cast<double>(members.size());
        centroid[1] /= static_cast<double>(members.size());

        Hyperedge edge;
        double max_h = 0.0;
        for (Index v : members) {
            double h = std::exp(-detail::sq_dist(out.vertex_coords[v], centroid) / s2);
            edge.members[v] = h;
            max_h = std::max(max_h, h);
        }
        for (auto& [v, h] : edge.members) h /= max_h;

        if (members.size() > 1) {
            double sim = 0.0;
            Index pairs = 0;
            for (Index a = 0; a < members.size(); ++a)
                for (Index b = a + 1; b < members.size(); ++b) {
                    sim += std::exp(
                        -detail::sq_dist(out.vertex_coords[members[a]], out.vertex_coords[members[b]]) /
                        s2);
                    ++pairs;
                }
            edge.weight = sim / static_cast<double>(pairs);
        } else {
            edge.weight = 1.0;
        }
        out.graph.hyperedges.push_back(std::move(edge));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mode merging and cluster assignment
// ---------------------------------------------------------------------------

struct MergedModes {
    std::vector<int> group_of;              // per input certificate
    std::vector<Index> representatives;     // per group: certificate index
};

/// Groups certificates whose mode vectors sit within tol in L1 distance
/// (transitive closure); each group is represented by its highest-λ member.
/// Groups are ordered by descending representative λ, ties by index.
inline MergedModes merge_modes(const std::vector<ModeCertificate>& certs, double tol = 0.1) {
    const Index n = certs.size();
    std::vector<Index> parent(n);
    std::iota(parent.begin(), parent.end(), Index{0});
    std::function<Index(Index)> find = [&](Index x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            if (find(i) == find(j)) continue;
            double l1 = 0.0;
            for (Index t = 0; t < certs[i].mode.size(); ++t)
                l1 += std::abs(certs[i].mode[t] - certs[j].mode[t]);
            if (l1 <= tol) parent[find(j)] = find(i);
        }

    std::map<Index, std::vector<Index>> buckets;
    for (Index i = 0; i < n; ++i) buckets[find(i)].push_back(i);

    std::vector<Index> reps;
    for (const auto& [root, members] : buckets) {
        Index best = members.front();
        for (Index m : members)
            if (certs[m].lambda > certs[best].lambda) best = m;
        reps.push_back(best);
    }
    std::sort(reps.begin(), reps.end(), [&](Index a, Index b) {
        if (certs[a].lambda != certs[b].lambda) return certs[a].lambda > certs[b].lambda;
        return a < b;
    });

    MergedModes out;
    out.representatives = reps;
    out.group_of.assign(n, -1);
    std::map<Index, int> group_of_root;
    for (Index gi = 0; gi < reps.size(); ++gi) group_of_root[find(reps[gi])] = static_cast<int>(gi);
    for (Index i = 0; i < n; ++i) out.group_of[i] = group_of_root[find(i)];
    return out;
}

// ---------------------------------------------------------------------------
// Clustering driver
// ---------------------------------------------------------------------------

struct ClusterConfig {
    Index k = 8;
    double sigma = 0.0;   // <= 0 selects the bandwidth automatically
    double merge_tol = 0.1;
    ShiftOptions shift;
};

struct HyperedgeClustering {
    std::vector<int> edge_cluster;          // per hyperedge; -1 = outlier
    std::vector<int> vertex_cluster;        // per vertex; -1 = outlier
    std::vector<ModeCertificate> modes;     // cluster representatives, λ desc
    std::vector<ModeCertificate> seed_certs;  // raw per-seed shift outcomes
};

/// Runs the shift from every hyperedge seed, merges coinciding modes, and
/// assigns hyperedges to their mode's cluster. Hyperedges that only reach
/// λ = 0 modes are outliers; vertices inherit the cluster maximizing
/// Σ_{e∋v} h_{v,e} · p_mode(e).
inline HyperedgeClustering cluster(const Hypergraph& g, const ClusterConfig& cfg = {}) {
    if (auto issue = validate(g))
        throw std::invalid_argument("invalid hypergraph: " + *issue);
    const HyperedgeAdjacency m = build_adjacency(g);
    const Index n = m.size();

    HyperedgeClustering out;
    out.seed_certs.resize(n);
    parallel_for(n, [&](Index e) {
        ShiftResult r = hypergraph_shift(m, initial_vector(m, e), g, cfg.shift);
        out.seed_certs[e] = std::move(r.certificate);
    });

    MergedModes merged = merge_modes(out.seed_certs, cfg.merge_tol);

    // Clusters are the merged groups with positive density.
    std::vector<int> cluster_of_group(merged.representatives.size(), -1);
    int next_cluster = 0;
    for (Index gi = 0; gi < merged.representatives.size(); ++gi) {
        if (out.seed_certs[merged.representatives[gi]].lambda > 0.0)
            cluster_of_group[gi] = next_cluster++;
    }
    for (Index gi = 0; gi < merged.representatives.size(); ++gi)
        if (cluster_of_group[gi] >= 0)
            out.modes.push_back(out.seed_certs[merged.representatives[gi]]);

    out.edge_cluster.resize(n);
    for (Index e = 0; e < n; ++e)
        out.edge_cluster[e] = cluster_of_group[merged.group_of[e]];

    // Vertex vote: each hyperedge claims its vertices for its cluster,
    // weighted by membership times the hyperedge's mass in the mode it
    // shifted to.
    out.vertex_cluster.assign(g.vertex_count, -1);
    std::vector<std::vector<double>> score(g.vertex_count,
                                           std::vector<double>(out.modes.size(), 0.0));
    for (Index e = 0; e < n; ++e) {
        const int c = out.edge_cluster[e];
        if (c < 0) continue;
        const double mass = out.seed_certs[e].mode[e];
        if (mass <= 0.0) continue;
        for (const auto& [v, h] : g.hyperedges[e].members) score[v][c] += h * mass;
    }
    for (Index v = 0; v < g.vertex_count; ++v) {
        double best = 0.0;
        int best_c = -1;
        for (Index c = 0; c < out.modes.size(); ++c)
            if (score[v][c] > best) {
                best = score[v][c];
                best_c = static_cast<int>(c);
            }
        out.vertex_cluster[v] = best_c;
    }
    return out;
}

/// Point-cloud driver: kNN hypergraph construction followed by cluster().
struct PointClusterResult {
    std::vector<int> assignments;  // per point; -1 = outlier
    HyperedgeClustering clustering;
    double sigma_used = 0.0;
};

inline PointClusterResult cluster_points(const PointSet& ps, const ClusterConfig& cfg = {}) {
    KnnHypergraph kg = knn_hyperedges(ps, cfg.k, cfg.sigma);
    PointClusterResult out;
    out.sigma_used = kg.sigma;
    out.clustering = cluster(kg.graph, cfg);
    out.assignments.resize(ps.points.size());
    for (Index i = 0; i < ps.points.size(); ++i)
        out.assignments[i] = out.clustering.vertex_cluster[kg.vertex_of_point[i]];
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Normalized mutual information between two labelings, normalized by the
/// geometric mean of the entropies. Positions where either side carries an
/// outlier marker (negative label) are excluded from both. Degenerate
/// zero-entropy partitions score 1 when the partitions coincide, else 0.
inline double nmi(std::span<const int> pred, std::span<const int> truth) {
    if (pred.size() != truth.size())
        throw std::invalid_argument("nmi: label vectors differ in length");
    std::vector<std::pair<int, int>> kept;
    for (Index i = 0; i < pred.size(); ++i)
        if (pred[i] >= 0 && truth[i] >= 0) kept.emplace_back(pred[i], truth[i]);
    const double n = static_cast<double>(kept.size());
    if (kept.empty()) return 1.0;

    std::map<int, double> pa, pb;
    std::map<std::pair<int, int>, double> pab;
    for (const auto& [a, b] : kept) {
        pa[a] += 1.0;
        pb[b] += 1.0;
        pab[{a, b}] += 1.0;
    }
    double ha = 0.0, hb = 0.0;
    for (const auto& [a, c] : pa) ha -= (c / n) * std::log(c / n);
    for (const auto& [b, c] : pb) hb -= (c / n) * std::log(c / n);
    if (ha <= 0.0 || hb <= 0.0) {
        // Single-cluster side: identical partitions iff both are single.
        return (pa.size() == 1 && pb.size() == 1) ? 1.0 : 0.0;
    }
    double mi = 0.0;
    for (const auto& [ab, c] : pab) {
        double pxy = c / n;
        mi += pxy * std::log(pxy * n * n / (pa[ab.first] * pb[ab.second]));
    }
    double value = mi / std::sqrt(ha * hb);
    return std::clamp(value, 0.0, 1.0);
}

}  // namespace hgshift
