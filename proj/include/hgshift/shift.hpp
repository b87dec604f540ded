#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hgshift/adjacency.hpp"
#include "hgshift/replicator.hpp"
#include "hgshift/simplex.hpp"
#include "hgshift/stqp.hpp"
#include "hgshift/voting.hpp"

namespace hgshift {

/// Voting direction away from a non-global mode: support entries move by
/// p*_i − 1, off-support entries gain max over zero of the seed-adjacent
/// reward Σ_{e_j∩e_i≠∅} p(e_j|S)·((Mp*)_i − F(p*)). Adjacency between
/// hyperedges is vertex overlap.
inline std::vector<double> direction_vector(const ModeCertificate& cert,
                                            const HyperedgeAdjacency& m,
                                            const SeedDistribution& seeds,
                                            const OverlapMask& overlap) {
    if (cert.is_global_mode)
        throw std::logic_error("direction_vector called on a certified global mode");
    const SimplexVector& p = cert.mode;
    if (p.size() != m.size()) throw std::invalid_argument("dimension mismatch in direction_vector");
    std::vector<double> g = m.matvec(p);
    std::vector<bool> on(p.size(), false);
    for (Index i : cert.support) on[i] = true;

    std::vector<double> h(p.size(), 0.0);
    for (Index i = 0; i < p.size(); ++i) {
        if (on[i]) {
            h[i] = p[i] - 1.0;
        } else {
            double adjacent_mass = 0.0;
            for (Index k = 0; k < seeds.subset.size(); ++k)
                if (overlap(seeds.subset[k], i)) adjacent_mass += seeds.closeness[k];
            double reward = adjacent_mass * (g[i] - cert.lambda);
            h[i] = reward > 0.0 ? reward : 0.0;
        }
    }
    return h;
}

/// How far to travel along h and what that bought. The step length maximizes
/// the density of the renormalized point (p* + ch)/|p* + ch|_1, whose
/// derivative in c is linear, subject to the feasibility bound
/// c_max = min_i p*_i/(1 − p*_i) that keeps support entries nonnegative.
/// The classical parabola vertex b/(−η) of Q(c) = ηc² + 2bc is reported for
/// audit but ignores the renormalization and can overshoot or stall.
struct ExpansionResult {
    std::vector<double> direction;  // h
    double eta = 0.0;               // hᵀMh
    double b = 0.0;                 // p*ᵀMh
    double sigma = 0.0;             // Σ h_i
    double c_vertex = std::numeric_limits<double>::infinity();  // b/(−η) when η < 0
    double c_max = std::numeric_limits<double>::infinity();
    double c_star = 0.0;
    std::vector<double> delta_p;    // c*·h
    bool improved = false;
    SimplexVector expanded;         // renormalized p* + Δp (valid when improved)
    double expanded_density = 0.0;
};

inline ExpansionResult expansion_step(const ModeCertificate& cert, const HyperedgeAdjacency& m,
                                      const std::vector<double>& h) {
    const SimplexVector& p = cert.mode;
    if (h.size() != p.size() || p.size() != m.size())
        throw std::invalid_argument("dimension mismatch in expansion_step");

    ExpansionResult r;
    r.direction = h;
    r.eta = m.quadratic(h);
    std::vector<double> g = m.matvec(p);
    for (Index i = 0; i < p.size(); ++i) {
        r.b += h[i] * g[i];
        r.sigma += h[i];
    }
    if (r.eta < 0.0) r.c_vertex = r.b / (-r.eta);

    const double lambda = cert.lambda;
    for (Index i : cert.support)
        if (p[i] < 1.0) r.c_max = std::min(r.c_max, p[i] / (1.0 - p[i]));

    // Gain of the renormalized point at c = 0+ is b − σλ, which reduces to
    // Σ_off h_i·((Mp*)_i − λ) ≥ 0 at an exact mode; nonpositive means no
    // usable ascent and the caller keeps the current (local) mode.
    const double gain = r.b - r.sigma * lambda;
    r.delta_p.assign(p.size(), 0.0);
    r.expanded = p;
    r.expanded_density = lambda;
    if (!(gain > 0.0)) return r;

    const double denom = r.b * r.sigma - r.eta;
    if (denom > 0.0) {
        r.c_star = std::min(gain / denom, r.c_max);
    } else if (std::isfinite(r.c_max)) {
        r.c_star = r.c_max;
    } else {
        // Renormalized density increases all the way to the limit point
        // h/|h|_1; a unit of added mass is a canonical finite stand-in.
        r.c_star = 1.0 / r.sigma;
    }

    std::vector<double> expanded(p.size());
    for (Index i = 0; i < p.size(); ++i) {
        r.delta_p[i] = r.c_star * h[i];
        expanded[i] = p[i] + r.delta_p[i];
    }
    r.expanded = SimplexVector::normalized(std::move(expanded));
    r.expanded_density = m.quadratic(r.expanded);
    r.improved = r.expanded_density > lambda;
    return r;
}

enum class ShiftPhase { seek, expand };

inline const char* to_string(ShiftPhase p) {
    return p == ShiftPhase::seek ? "seek" : "expand";
}

struct TrajectoryRow {
    int step;
    ShiftPhase phase;
    double density;
    Index support_size;
};

struct ShiftOptions {
    SeekOptions seek;
    int expansion_cap = -1;  // < 0 means |E|
    // Exact Eq.-10 recursion cap inside the shift loop. The voting ranking
    // is all the expansion consumes, and the one-level approximation
    // preserves it; the exact recursion costs 2^|S| and is kept for small
    // supports only.
    Index exact_subset_cap = 12;
};

struct ShiftResult {
    ModeCertificate certificate;
    std::vector<TrajectoryRow> trajectory;
    int expansions = 0;
    bool hit_expansion_cap = false;
    int replicator_iterations = 0;
};

/// The full shift loop: seek a mode of the current subhypergraph, certify it
/// against the whole hypergraph, and while the certificate fails, expand
/// along the probabilistic-voting direction and seek again. Terminates on a
/// certified global mode, an expansion that cannot improve, a non-converged
/// seek, or the expansion cap.
inline ShiftResult hypergraph_shift(const HyperedgeAdjacency& m, const SimplexVector& p0,
                                    const Hypergraph& g, const ShiftOptions& opt = {}) {
    if (p0.size() != m.size() || g.edge_count() != m.size())
        throw std::invalid_argument("dimension mismatch in hypergraph_shift");
    const Index cap =
        opt.expansion_cap < 0 ? m.size() : static_cast<Index>(opt.expansion_cap);

    ShiftResult result;
    int step = 0;

    if (density(p0, m) <= 0.0) {
        std::vector<Index> supp = support(p0, opt.seek.support_tol);
        if (supp.size() == 1 && m.neighbors(supp[0]).empty()) {
            // Isolated seed: a trivial outlier mode with λ = 0.
            result.certificate = is_mode(p0, m, opt.seek.mode_tol, opt.seek.support_tol);
            result.trajectory.push_back({step, ShiftPhase::seek, result.certificate.lambda,
                                         result.certificate.support.size()});
            return result;
        }
        throw std::domain_error("degenerate start: zero density");
    }

    const OverlapMask overlap = OverlapMask::from_hypergraph(g);
    SimplexVector p = p0;
    for (;;) {
        SeekResult seek = seek_mode(p, m, opt.seek);
        result.replicator_iterations += seek.iterations;
        result.certificate = seek.certificate;
        result.trajectory.push_back({step++, ShiftPhase::seek, seek.certificate.lambda,
                                     seek.certificate.support.size()});
        if (seek.certificate.is_global_mode || !seek.certificate.converged) return result;

        SeedDistribution seeds =
            dominant_seed_distribution(m, seek.certificate.support, opt.exact_subset_cap);
        std::vector<double> h = direction_vector(seek.certificate, m, seeds, overlap);
        ExpansionResult expansion = expansion_step(seek.certificate, m, h);
        if (!expansion.improved) return result;
        if (static_cast<Index>(result.expansions) >= cap) {
            result.hit_expansion_cap = true;
            return result;
        }
        ++result.expansions;
        p = expansion.expanded;
        result.trajectory.push_back({step++, ShiftPhase::expand, expansion.expanded_density,
                                     support(p, opt.seek.support_tol).size()});
    }
}

}  // namespace hgshift
