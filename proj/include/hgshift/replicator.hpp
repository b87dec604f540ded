#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hgshift/adjacency.hpp"
#include "hgshift/simplex.hpp"
#include "hgshift/stqp.hpp"

namespace hgshift {

/// One discrete replicator update p_i ← p_i (Mp)_i / (pᵀMp).
/// The simplex is invariant and the density never decreases.
inline SimplexVector replicator_step(const SimplexVector& p, const HyperedgeAdjacency& m) {
    if (p.size() != m.size())
        throw std::invalid_argument("dimension mismatch in replicator_step");
    std::vector<double> g = m.matvec(p);
    double f = 0.0;
    for (Index i = 0; i < p.size(); ++i) f += p[i] * g[i];
    if (f <= 0.0) throw std::domain_error("degenerate start: zero density");
    std::vector<double> next(p.size());
    for (Index i = 0; i < p.size(); ++i) next[i] = p[i] * g[i] / f;
    return SimplexVector::normalized(std::move(next));
}

/// Uniform start over a seed hyperedge and its affinity neighbors. An
/// isolated seed yields its bare indicator, which callers must treat as a
/// trivial outlier mode (replicator dynamics are undefined there).
inline SimplexVector initial_vector(const HyperedgeAdjacency& m, Index seed) {
    if (seed >= m.size()) throw std::out_of_range("seed hyperedge index out of range");
    std::vector<double> e(m.size(), 0.0);
    e[seed] = 1.0;
    for (Index j : m.neighbors(seed)) e[j] = 1.0;
    return SimplexVector::normalized(std::move(e));
}

struct SeekOptions {
    double eps = 1e-9;                // stop threshold on |ΔF|
    int max_iter = 1000;
    double mode_tol = kDefaultModeTol;
    double support_tol = kDefaultSupportThreshold;
    // On-support stationarity required before declaring convergence,
    // relative to max(F, 1). |ΔF| alone can stall while a slowly decaying
    // coordinate still sits above the support threshold.
    double stationarity_tol = 1e-5;
};

struct SeekTraceRow {
    int iteration;
    double density;
    Index support_size;
};

struct SeekResult {
    ModeCertificate certificate;
    int iterations = 0;
};

/// Iterates the replicator dynamics from p0 until the density improvement
/// drops below eps and the current support is stationary, or max_iter is
/// reached (reported via certificate.converged, not an exception). The
/// returned certificate evaluates the final iterate against the full matrix.
inline SeekResult seek_mode(const SimplexVector& p0, const HyperedgeAdjacency& m,
                            const SeekOptions& opt = {},
                            std::vector<SeekTraceRow>* trace = nullptr) {
    if (p0.size() != m.size()) throw std::invalid_argument("dimension mismatch in seek_mode");
    if (opt.eps <= 0.0) throw std::invalid_argument("eps must be positive");

    std::vector<double> p = p0.entries();
    double prev_f = 0.0;
    bool converged = false;
    int steps = 0;

    for (int t = 0;; ++t) {
        std::vector<double> g = m.matvec(p);
        double f = 0.0;
        for (Index i = 0; i < p.size(); ++i) f += p[i] * g[i];
        if (t == 0 && f <= 0.0) throw std::domain_error("degenerate start: zero density");

        double resid = 0.0;
        Index support_size = 0;
        for (Index i = 0; i < p.size(); ++i) {
            if (p[i] > opt.support_tol) {
                ++support_size;
                double r = std::abs(g[i] - f);
                if (r > resid) resid = r;
            }
        }
        if (trace) trace->push_back({t, f, support_size});

        bool stationary = resid <= opt.stationarity_tol * std::max(f, 1.0);
        bool flat = t > 0 && std::abs(f - prev_f) < opt.eps;
        if (stationary && (t == 0 || flat)) {
            converged = true;
            break;
        }
        if (t >= opt.max_iter) break;

        double sum = 0.0;
        for (Index i = 0; i < p.size(); ++i) {
            p[i] *= g[i] / f;
            sum += p[i];
        }
        for (double& x : p) x /= sum;
        ++steps;
        prev_f = f;
    }

    SeekResult result;
    result.iterations = steps;
    result.certificate =
        is_mode(SimplexVector::normalized(std::move(p)), m, opt.mode_tol, opt.support_tol);
    result.certificate.converged = converged;
    return result;
}

}  // namespace hgshift
