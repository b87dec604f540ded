#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "hgshift/adjacency.hpp"
#include "hgshift/clustering.hpp"
#include "hgshift/common.hpp"
#include "hgshift/io.hpp"
#include "hgshift/shift.hpp"

namespace hgshift {

struct MatchConfig {
    double sigma_g = 0.0;              // <= 0: 0.1 × source diameter
    Index hyperedge_cap_multiplier = 30;  // at most this many triplets per candidate
    double select_ratio = 0.5;         // keep candidates above this fraction of the top score
    double merge_tol = 0.1;            // L1 tolerance when merging per-seed modes
    std::uint64_t sample_seed = 42;    // triplet sampling seed
    ShiftOptions shift;
};

namespace detail {

inline double dist(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return std::sqrt(sq_dist(a, b));
}

inline double source_diameter(const CorrespondenceSet& cs) {
    double d = 0.0;
    for (Index i = 0; i < cs.source_points.size(); ++i)
        for (Index j = i + 1; j < cs.source_points.size(); ++j)
            d = std::max(d, dist(cs.source_points[i], cs.source_points[j]));
    return d;
}

inline double matching_sigma(const CorrespondenceSet& cs, const MatchConfig& cfg) {
    if (cfg.sigma_g > 0.0) return cfg.sigma_g;
    double d = 0.1 * source_diameter(cs);
    return d > 0.0 ? d : 1.0;
}

/// Largest discrepancy between corresponding pairwise distances across a
/// group of candidates; the geometric-consistency residual.
inline double distance_discrepancy(const CorrespondenceSet& cs, std::span<const Index> group) {
    double delta = 0.0;
    for (Index a = 0; a < group.size(); ++a)
        for (Index b = a + 1; b < group.size(); ++b) {
            const auto& ca = cs.candidates[group[a]];
            const auto& cb = cs.candidates[group[b]];
            double dp = dist(cs.source_points[ca.first], cs.source_points[cb.first]);
            double dq = dist(cs.target_points[ca.second], cs.target_points[cb.second]);
            delta = std::max(delta, std::abs(dp - dq));
        }
    return delta;
}

/// One-to-one check: no shared source or target point within the group.
inline bool distinct_endpoints(const CorrespondenceSet& cs, std::span<const Index> group) {
    for (Index a = 0; a < group.size(); ++a)
        for (Index b = a + 1; b < group.size(); ++b) {
            const auto& ca = cs.candidates[group[a]];
            const auto& cb = cs.candidates[group[b]];
            if (ca.first == cb.first || ca.second == cb.second) return false;
        }
    return true;
}

inline Hypergraph association_hypergraph(const CorrespondenceSet& cs, const MatchConfig& cfg,
                                         Index arity) {
    const Index nc = cs.candidates.size();
    if (nc < 3) throw std::invalid_argument("need at least 3 candidate correspondences");
    const double sigma = matching_sigma(cs, cfg);
    const double s2 = sigma * sigma;

    std::vector<std::vector<Index>> groups;
    std::vector<Index> idx(arity);
    if (arity == 3) {
        for (Index a = 0; a < nc; ++a)
            for (Index b = a + 1; b < nc; ++b)
                for (Index c = b + 1; c < nc; ++c) {
                    idx = {a, b, c};
                    if (distinct_endpoints(cs, idx)) groups.push_back(idx);
                }
    } else {
        for (Index a = 0; a < nc; ++a)
            for (Index b = a + 1; b < nc; ++b) {
                idx = {a, b};
                if (distinct_endpoints(cs, idx)) groups.push_back(idx);
            }
    }

    const Index cap = cfg.hyperedge_cap_multiplier * nc;
    if (groups.size() > cap) {
        std::mt19937_64 rng(cfg.sample_seed);
        std::shuffle(groups.begin(), groups.end(), rng);
        groups.resize(cap);
        std::sort(groups.begin(), groups.end());
    }

    Hypergraph g;
    g.vertex_count = nc;
    for (const auto& group : groups) {
        double delta = distance_discrepancy(cs, group);
        double w = std::exp(-delta * delta / s2);
        if (w < 1e-12) continue;  // geometrically inconsistent
        Hyperedge e;
        e.weight = w;
        for (Index v : group) e.members[v] = 1.0;
        g.hyperedges.push_back(std::move(e));
    }
    if (g.hyperedges.empty())
        throw std::runtime_error("empty association hypergraph: no consistent groups");
    return g;
}

}  // namespace detail

/// Association hypergraph over candidate correspondences: vertices are the
/// candidates, hyperedges are one-to-one triplets weighted by geometric
/// consistency exp(−Δ²/σ_g²), with binary memberships.
inline Hypergraph build_association_hypergraph(const CorrespondenceSet& cs,
                                               const MatchConfig& cfg = {}) {
    return detail::association_hypergraph(cs, cfg, 3);
}

struct MatchResult {
    std::vector<std::pair<Index, Index>> selected;
    ModeCertificate certificate;
    double sigma_g = 0.0;
    Index hyperedge_count = 0;
};

namespace detail {

/// Seed hyperedges for the mode search: the globally heaviest hyperedge
/// plus, for every candidate, the heaviest hyperedge containing it. Modes of
/// the association hypergraph are narrow (near-uniform triplet affinities
/// concentrate on star-shaped cliques), so coverage needs one run per
/// candidate rather than a single run.
inline std::vector<Index> match_seeds(const Hypergraph& g, Index candidate_count) {
    std::vector<Index> best_of(candidate_count, g.edge_count());
    Index best_global = 0;
    for (Index e = 0; e < g.edge_count(); ++e) {
        if (g.hyperedges[e].weight > g.hyperedges[best_global].weight) best_global = e;
        for (const auto& [v, h] : g.hyperedges[e].members) {
            if (best_of[v] == g.edge_count() ||
                g.hyperedges[e].weight > g.hyperedges[best_of[v]].weight)
                best_of[v] = e;
        }
    }
    std::set<Index> seeds{best_global};
    for (Index v = 0; v < candidate_count; ++v)
        if (best_of[v] != g.edge_count()) seeds.insert(best_of[v]);
    return {seeds.begin(), seeds.end()};
}

inline MatchResult run_match(const CorrespondenceSet& cs, const MatchConfig& cfg, Index arity) {
    Hypergraph g = association_hypergraph(cs, cfg, arity);
    HyperedgeAdjacency m = build_adjacency(g);

    std::vector<Index> seeds = match_seeds(g, cs.candidates.size());
    std::vector<ModeCertificate> certs(seeds.size());
    parallel_for(seeds.size(), [&](Index i) {
        ShiftResult r = hypergraph_shift(m, initial_vector(m, seeds[i]), g, cfg.shift);
        certs[i] = std::move(r.certificate);
    });
    MergedModes merged = merge_modes(certs, cfg.merge_tol);

    // Aggregate λ-weighted mode mass per candidate across the distinct modes.
    std::vector<double> score(cs.candidates.size(), 0.0);
    for (Index rep : merged.representatives) {
        const ModeCertificate& cert = certs[rep];
        if (cert.lambda <= 0.0) continue;
        for (Index e = 0; e < g.edge_count(); ++e) {
            if (cert.mode[e] <= 0.0) continue;
            for (const auto& [v, h] : g.hyperedges[e].members)
                score[v] += cert.lambda * h * cert.mode[e];
        }
    }
    double top = 0.0;
    for (double s : score) top = std::max(top, s);

    std::vector<Index> order;
    for (Index c = 0; c < score.size(); ++c)
        if (score[c] > 0.0 && score[c] >= cfg.select_ratio * top) order.push_back(c);
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return a < b;
    });

    MatchResult out;
    out.certificate = certs[merged.representatives.front()];
    out.sigma_g = matching_sigma(cs, cfg);
    out.hyperedge_count = g.edge_count();
    std::set<Index> used_src, used_tgt;
    for (Index c : order) {
        const auto& [ps, qt] = cs.candidates[c];
        if (used_src.count(ps) || used_tgt.count(qt)) continue;
        used_src.insert(ps);
        used_tgt.insert(qt);
        out.selected.push_back(cs.candidates[c]);
    }
    std::sort(out.selected.begin(), out.selected.end());
    return out;
}

}  // namespace detail

/// Mode seeking on the triplet association hypergraph from the
/// highest-weight seed; candidates with aggregate mode mass above half the
/// maximum are kept and resolved one-to-one greedily by descending score.
inline MatchResult match(const CorrespondenceSet& cs, const MatchConfig& cfg = {}) {
    return detail::run_match(cs, cfg, 3);
}

/// Same pipeline over plain pairwise edges; the comparison column.
inline MatchResult pairwise_baseline(const CorrespondenceSet& cs, const MatchConfig& cfg = {}) {
    return detail::run_match(cs, cfg, 2);
}

/// Fraction of ground-truth pairs recovered.
inline double matching_rate(std::span<const std::pair<Index, Index>> selected,
                            std::span<const std::pair<Index, Index>> truth) {
    if (truth.empty()) throw std::invalid_argument("matching_rate needs a nonempty truth set");
    std::set<std::pair<Index, Index>> t(truth.begin(), truth.end());
    Index hit = 0;
    for (const auto& s : selected) hit += t.count(s);
    return static_cast<double>(hit) / static_cast<double>(t.size());
}

/// Synthetic instance: random source points, a rigidly transformed noisy
/// copy as targets, extra outlier targets, and candidates = the true pairs
/// plus distractor pairs tying each outlier to its two nearest sources.
inline CorrespondenceSet gen_matching_instance(Index n, double noise_sigma, Index n_outliers,
                                               std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("gen_matching_instance needs at least 4 points");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(0.0, 10.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    std::uniform_real_distribution<double> shift(0.0, 5.0);
    std::normal_distribution<double> noise(0.0, noise_sigma > 0.0 ? noise_sigma : 1.0);

    CorrespondenceSet cs;
    for (Index i = 0; i < n; ++i) cs.source_points.push_back({coord(rng), coord(rng)});

    const double theta = angle(rng);
    const double c = std::cos(theta), s = std::sin(theta);
    const double tx = shift(rng), ty = shift(rng);
    double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
    for (Index i = 0; i < n; ++i) {
        const auto& p = cs.source_points[i];
        double x = c * p[0] - s * p[1] + tx;
        double y = s * p[0] + c * p[1] + ty;
        if (i == 0) {
            lo_x = hi_x = x;
            lo_y = hi_y = y;
        } else {
            lo_x = std::min(lo_x, x);
            hi_x = std::max(hi_x, x);
            lo_y = std::min(lo_y, y);
            hi_y = std::max(hi_y, y);
        }
        if (noise_sigma > 0.0) {
            x += noise(rng);
            y += noise(rng);
        }
        cs.target_points.push_back({x, y});
        cs.candidates.emplace_back(i, i);
        cs.truth.emplace_back(i, i);
    }

    std::uniform_real_distribution<double> ox(lo_x, hi_x), oy(lo_y, hi_y);
    for (Index o = 0; o < n_outliers; ++o) {
        const Index q = cs.target_points.size();
        cs.target_points.push_back({ox(rng), oy(rng)});
        // Two nearest sources become distractor candidates for this outlier.
        std::vector<std::pair<double, Index>> near;
        for (Index i = 0; i < n; ++i)
            near.emplace_back(detail::sq_dist(cs.source_points[i], cs.target_points[q]), i);
        std::partial_sort(near.begin(), near.begin() + 2, near.end());
        cs.candidates.emplace_back(near[0].second, q);
        cs.candidates.emplace_back(near[1].second, q);
    }
    return cs;
}

}  // namespace hgshift
