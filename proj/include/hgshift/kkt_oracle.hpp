#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hgshift/adjacency.hpp"
#include "hgshift/stqp.hpp"

namespace hgshift {

namespace detail {

/// Solves A x = rhs in place by Gaussian elimination with partial pivoting.
/// Returns false when a pivot falls below the singularity threshold.
inline bool solve_dense(std::vector<double>& a, std::vector<double>& rhs, Index n) {
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    const double tiny = std::max(scale, 1.0) * 1e-12;
    std::vector<Index> perm(n);
    for (Index i = 0; i < n; ++i) perm[i] = i;
    for (Index col = 0; col < n; ++col) {
        Index best = col;
        double best_abs = std::abs(a[perm[col] * n + col]);
        for (Index r = col + 1; r < n; ++r) {
            double v = std::abs(a[perm[r] * n + col]);
            if (v > best_abs) {
                best_abs = v;
                best = r;
            }
        }
        if (best_abs < tiny) return false;
        std::swap(perm[col], perm[best]);
        const Index prow = perm[col];
        const double pivot = a[prow * n + col];
        for (Index r = col + 1; r < n; ++r) {
            const Index row = perm[r];
            double f = a[row * n + col] / pivot;
            if (f == 0.0) continue;
            for (Index c = col; c < n; ++c) a[row * n + c] -= f * a[prow * n + c];
            rhs[row] -= f * rhs[prow];
        }
    }
    std::vector<double> x(n);
    for (Index ci = n; ci-- > 0;) {
        const Index row = perm[ci];
        double acc = rhs[row];
        for (Index c = ci + 1; c < n; ++c) acc -= a[row * n + c] * x[c];
        x[ci] = acc / a[row * n + ci];
    }
    rhs = std::move(x);
    return true;
}

}  // namespace detail

/// Everything the exhaustive small-instance oracle found: the isolated
/// replicator fixed points over every support (certified against the full
/// matrix, λ descending) plus the supports whose on-support linear system
/// was singular and therefore skipped.
struct KktEnumeration {
    std::vector<ModeCertificate> points;
    std::vector<std::uint32_t> singular_supports;
};

inline constexpr Index kKktEnumerationMaxSize = 12;

/// Enumerates, for every nonempty support S, the solution of
/// (M_S p_S)_i = λ on S with Σ p_S = 1, keeping solutions that are strictly
/// positive on S. Each kept point carries its full-matrix certificate, so
/// strict KKT points (Theorem-1 modes) are the entries flagged
/// is_global_mode; the remaining entries are the fixed points replicator
/// dynamics can converge to from starts confined to S.
inline KktEnumeration enumerate_kkt_points(const HyperedgeAdjacency& m,
                                           double tol = kDefaultModeTol,
                                           double positivity_tol = 1e-9) {
    const Index n = m.size();
    if (n == 0) throw std::invalid_argument("empty adjacency");
    if (n > kKktEnumerationMaxSize)
        throw std::invalid_argument("enumerate_kkt_points supports at most " +
                                    std::to_string(kKktEnumerationMaxSize) + " hyperedges");
    KktEnumeration out;
    const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::vector<Index> sel;
        for (Index i = 0; i < n; ++i)
            if (mask & (1u << i)) sel.push_back(i);
        const Index k = sel.size();

        // Unknowns: p over S then λ. Rows: stationarity on S, then Σ p = 1.
        const Index dim = k + 1;
        std::vector<double> a(dim * dim, 0.0);
        std::vector<double> rhs(dim, 0.0);
        for (Index r = 0; r < k; ++r) {
            for (Index c = 0; c < k; ++c) a[r * dim + c] = m(sel[r], sel[c]);
            a[r * dim + k] = -1.0;
        }
        for (Index c = 0; c < k; ++c) a[k * dim + c] = 1.0;
        rhs[k] = 1.0;

        if (!detail::solve_dense(a, rhs, dim)) {
            out.singular_supports.push_back(mask);
            continue;
        }
        bool positive = true;
        for (Index c = 0; c < k; ++c)
            if (rhs[c] <= positivity_tol) {
                positive = false;
                break;
            }
        if (!positive) continue;

        std::vector<double> p(n, 0.0);
        for (Index c = 0; c < k; ++c) p[sel[c]] = rhs[c];
        out.points.push_back(is_mode(SimplexVector::normalized(std::move(p)), m, tol));
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const ModeCertificate& x, const ModeCertificate& y) {
                  if (x.lambda != y.lambda) return x.lambda > y.lambda;
                  if (x.support.size() != y.support.size())
                      return x.support.size() < y.support.size();
                  return x.support < y.support;
              });
    return out;
}

}  // namespace hgshift
