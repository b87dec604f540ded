#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "hgshift/adjacency.hpp"
#include "hgshift/common.hpp"

namespace hgshift {

/// Largest subset size handled by the exact closeness recursion; beyond it
/// callers fall back to the one-level approximation.
inline constexpr Index kExactSubsetCap = 20;

/// Average weighted degree g_S(e_k) = (1/|S|) Σ_{j∈S} M(k,j).
inline double avg_weighted_degree(const HyperedgeAdjacency& m, std::span<const Index> s,
                                  Index k) {
    if (s.empty()) throw std::invalid_argument("avg_weighted_degree over empty subset");
    double sum = 0.0;
    for (Index j : s) sum += m(k, j);
    return sum / static_cast<double>(s.size());
}

/// Relative closeness ψ_S(e_i, e_j) = M(i,j) − g_S(e_i); requires i ∈ S.
inline double relative_closeness(const HyperedgeAdjacency& m, std::span<const Index> s,
                                 Index i, Index j) {
    if (std::find(s.begin(), s.end(), i) == s.end())
        throw std::invalid_argument("relative_closeness: index not in subset");
    return m(i, j) - avg_weighted_degree(m, s, i);
}

namespace detail {

/// Memoized evaluation of the recursive closeness weight w_S(e_i) over
/// subsets of a fixed base set, keyed by (local bitmask, local index).
class SubsetWeightSolver {
public:
    SubsetWeightSolver(const HyperedgeAdjacency& m, std::span<const Index> base)
        : m_(m), base_(base.begin(), base.end()) {
        if (base_.size() > kExactSubsetCap)
            throw std::invalid_argument("subset exceeds exact recursion cap");
    }

    double weight(Index local_i) { return weight_of(full_mask(), local_i); }

    double weight_of(std::uint32_t mask, Index local_i) {
        const std::uint64_t key = (static_cast<std::uint64_t>(mask) << 5) | local_i;
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        double w;
        if (std::popcount(mask) == 1) {
            w = 1.0;
        } else {
            const std::uint32_t rest = mask & ~(1u << local_i);
            const double g_denom = static_cast<double>(std::popcount(rest));
            w = 0.0;
            for (Index j = 0; j < base_.size(); ++j) {
                if (!(rest & (1u << j))) continue;
                double g = 0.0;
                for (Index k = 0; k < base_.size(); ++k)
                    if (rest & (1u << k)) g += m_(base_[j], base_[k]);
                const double psi = m_(base_[j], base_[local_i]) - g / g_denom;
                w += psi * weight_of(rest, j);
            }
        }
        memo_.emplace(key, w);
        return w;
    }

    std::uint32_t full_mask() const {
        return base_.size() == 32 ? 0xffffffffu
                                  : ((1u << base_.size()) - 1u);
    }

private:
    const HyperedgeAdjacency& m_;
    std::vector<Index> base_;
    std::unordered_map<std::uint64_t, double> memo_;
};

}  // namespace detail

/// Recursive closeness weight w_S(e_i): 1 on singletons, otherwise
/// Σ_{j∈S−{i}} ψ_{S−{i}}(e_j, e_i) · w_{S−{i}}(e_j). Exact (memoized)
/// evaluation, valid up to the exact-recursion cap.
inline double subset_weight(const HyperedgeAdjacency& m, std::span<const Index> s, Index i,
                            Index exact_cap = kExactSubsetCap) {
    if (s.size() > exact_cap)
        throw std::invalid_argument("subset exceeds exact recursion cap; use subset_weight_approx");
    auto pos = std::find(s.begin(), s.end(), i);
    if (pos == s.end()) throw std::invalid_argument("subset_weight: index not in subset");
    detail::SubsetWeightSolver solver(m, s);
    return solver.weight(static_cast<Index>(pos - s.begin()));
}

/// One-level approximation ŵ_S(e_i) = Σ_{j∈S−{i}} ψ_{S−{i}}(e_j, e_i),
/// used when |S| exceeds the exact-recursion cap.
inline double subset_weight_approx(const HyperedgeAdjacency& m, std::span<const Index> s,
                                   Index i) {
    auto pos = std::find(s.begin(), s.end(), i);
    if (pos == s.end()) throw std::invalid_argument("subset_weight: index not in subset");
    if (s.size() == 1) return 1.0;
    std::vector<Index> rest;
    rest.reserve(s.size() - 1);
    for (Index j : s)
        if (j != i) rest.push_back(j);
    double w = 0.0;
    for (Index j : rest) w += m(j, i) - avg_weighted_degree(m, rest, j);
    return w;
}

/// Closeness of each member of S under the probabilistic-voting measure
/// p(e_i|S) = w_S(e_i)/W(S), zero outside S.
struct SeedDistribution {
    std::vector<Index> subset;      // sorted
    std::vector<double> closeness;  // aligned with subset, in [0,1], sums to 1

    double closeness_of(Index e) const {
        auto it = std::lower_bound(subset.begin(), subset.end(), e);
        if (it == subset.end() || *it != e) return 0.0;
        return closeness[static_cast<Index>(it - subset.begin())];
    }
};

/// Normalizes the closeness weights over S. Degenerate guards: when the
/// total weight W(S) is nonpositive the distribution falls back to uniform;
/// negative individual weights are clamped to zero before normalizing so
/// the result stays a probability distribution.
inline SeedDistribution dominant_seed_distribution(const HyperedgeAdjacency& m,
                                                   std::span<const Index> s,
                                                   Index exact_cap = kExactSubsetCap) {
    if (s.empty()) throw std::invalid_argument("dominant seed over empty subset");
    SeedDistribution dist;
    dist.subset.assign(s.begin(), s.end());
    std::sort(dist.subset.begin(), dist.subset.end());

    std::vector<double> w(dist.subset.size());
    if (dist.subset.size() <= std::min(exact_cap, kExactSubsetCap)) {
        detail::SubsetWeightSolver solver(m, dist.subset);
        for (Index i = 0; i < dist.subset.size(); ++i) w[i] = solver.weight(i);
    } else {
        for (Index i = 0; i < dist.subset.size(); ++i)
            w[i] = subset_weight_approx(m, dist.subset, dist.subset[i]);
    }

    double total = 0.0;
    for (double v : w) total += v;
    double clamped_total = 0.0;
    for (double& v : w) {
        if (v < 0.0) v = 0.0;
        clamped_total += v;
    }
    dist.closeness.resize(w.size());
    if (total <= 0.0 || clamped_total <= 0.0) {
        std::fill(dist.closeness.begin(), dist.closeness.end(),
                  1.0 / static_cast<double>(w.size()));
    } else {
        for (Index i = 0; i < w.size(); ++i) dist.closeness[i] = w[i] / clamped_total;
    }
    return dist;
}

}  // namespace hgshift
