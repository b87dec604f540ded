#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgshift/common.hpp"

namespace hgshift {

/// One hyperedge: a nonnegative weight plus a sparse map from vertex index
/// to membership probability. Memberships lie in (0,1]; a vertex with zero
/// membership is simply absent from the map.
struct Hyperedge {
    double weight = 1.0;
    std::map<Index, double> members;
};

/// A weighted hypergraph with probabilistic incidence. Immutable by
/// convention once built; all library entry points take it by const
/// reference and never mutate it.
struct Hypergraph {
    Index vertex_count = 0;
    std::vector<Hyperedge> hyperedges;

    Index edge_count() const { return hyperedges.size(); }
};

/// Checks every structural invariant and reports the first violation found
/// (scanning hyperedges in order), or an empty optional when the hypergraph
/// is well formed.
inline std::optional<std::string> validate(const Hypergraph& g) {
    for (Index e = 0; e < g.hyperedges.size(); ++e) {
        const Hyperedge& edge = g.hyperedges[e];
        if (edge.members.empty())
            return "empty hyperedge at index " + std::to_string(e);
        for (const auto& [v, h] : edge.members) {
            if (!(h > 0.0) || h > 1.0 || !std::isfinite(h))
                return "membership probability out of range at hyperedge " +
                       std::to_string(e) + ", vertex " + std::to_string(v) +
                       ": " + fmt_double(h);
            if (v >= g.vertex_count)
                return "vertex index " + std::to_string(v) +
                       " out of range at hyperedge " + std::to_string(e);
        }
        if (!std::isfinite(edge.weight) || edge.weight < 0.0)
            return "weight not finite and nonnegative at hyperedge " +
                   std::to_string(e) + ": " + fmt_double(edge.weight);
    }
    return std::nullopt;
}

/// Hyperedge degree delta(e_i): the sum of its membership probabilities.
inline double hyperedge_degree(const Hypergraph& g, Index i) {
    if (i >= g.hyperedges.size())
        throw std::out_of_range("hyperedge index out of range: " + std::to_string(i));
    double sum = 0.0;
    for (const auto& [v, h] : g.hyperedges[i].members) sum += h;
    return sum;
}

/// Vertex degree: the weighted sum of memberships over hyperedges containing v.
inline double vertex_degree(const Hypergraph& g, Index v) {
    if (v >= g.vertex_count)
        throw std::out_of_range("vertex index out of range: " + std::to_string(v));
    double sum = 0.0;
    for (const Hyperedge& edge : g.hyperedges) {
        auto it = edge.members.find(v);
        if (it != edge.members.end()) sum += it->second * edge.weight;
    }
    return sum;
}

/// Probabilistic intersection mass |e_i ∩ e_j|: the sum over shared vertices
/// of the smaller membership. Coincides with the shared-vertex count when
/// memberships are binary.
inline double intersection_mass(const Hypergraph& g, Index i, Index j) {
    if (i >= g.hyperedges.size() || j >= g.hyperedges.size())
        throw std::out_of_range("hyperedge index out of range");
    const auto& a = g.hyperedges[i].members;
    const auto& b = g.hyperedges[j].members;
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    double mass = 0.0;
    for (const auto& [v, h] : small) {
        auto it = large.find(v);
        if (it != large.end()) mass += std::min(h, it->second);
    }
    return mass;
}

}  // namespace hgshift
