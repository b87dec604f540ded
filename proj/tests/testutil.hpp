#pragma once

#include <random>
#include <vector>

#include "hgshift/adjacency.hpp"
#include "hgshift/hypergraph.hpp"
#include "hgshift/simplex.hpp"

namespace hgtest {

using hgshift::Hyperedge;
using hgshift::Hypergraph;
using hgshift::HyperedgeAdjacency;
using hgshift::Index;
using hgshift::SimplexVector;

/// Random valid hypergraph: a smallish vertex pool keeps overlaps frequent.
inline Hypergraph random_hypergraph(std::mt19937_64& rng, Index max_edges = 30,
                                    Index max_vertices = 60) {
    std::uniform_int_distribution<Index> nv(4, max_vertices);
    std::uniform_int_distribution<Index> ne(2, max_edges);
    std::uniform_real_distribution<double> memb(0.05, 1.0);
    std::uniform_real_distribution<double> wgt(0.1, 2.0);

    Hypergraph g;
    g.vertex_count = nv(rng);
    const Index edges = ne(rng);
    std::uniform_int_distribution<Index> vid(0, g.vertex_count - 1);
    std::uniform_int_distribution<Index> esz(2, std::min<Index>(5, g.vertex_count));
    for (Index e = 0; e < edges; ++e) {
        Hyperedge edge;
        edge.weight = wgt(rng);
        const Index size = esz(rng);
        while (edge.members.size() < size) edge.members[vid(rng)] = memb(rng);
        g.hyperedges.push_back(std::move(edge));
    }
    return g;
}

/// Random binary-membership hypergraph (all h = 1).
inline Hypergraph random_binary_hypergraph(std::mt19937_64& rng, Index max_edges = 20,
                                           Index max_vertices = 30) {
    Hypergraph g = random_hypergraph(rng, max_edges, max_vertices);
    for (auto& e : g.hyperedges)
        for (auto& [v, h] : e.members) h = 1.0;
    return g;
}

/// Random symmetric zero-diagonal affinity matrix with the given fill rate.
inline HyperedgeAdjacency random_affinity(std::mt19937_64& rng, Index n,
                                          double fill = 0.7) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    HyperedgeAdjacency m(n);
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (u(rng) < fill) m.set(i, j, 0.05 + u(rng));
    return m;
}

/// Strictly interior random simplex point.
inline SimplexVector random_interior_simplex(std::mt19937_64& rng, Index n) {
    std::uniform_real_distribution<double> u(1e-6, 1.0);
    std::vector<double> e(n);
    for (double& x : e) x = -std::log(u(rng));
    return SimplexVector::normalized(std::move(e));
}

/// Three binary hyperedges pairwise sharing one vertex; with unit weights
/// its adjacency is the all-ones (off-diagonal) 3x3 matrix.
inline Hypergraph triangle_hypergraph(double w0 = 1.0, double w1 = 1.0, double w2 = 1.0) {
    Hypergraph g;
    g.vertex_count = 3;
    g.hyperedges.resize(3);
    g.hyperedges[0].weight = w0;
    g.hyperedges[0].members = {{0, 1.0}, {1, 1.0}};
    g.hyperedges[1].weight = w1;
    g.hyperedges[1].members = {{1, 1.0}, {2, 1.0}};
    g.hyperedges[2].weight = w2;
    g.hyperedges[2].members = {{2, 1.0}, {0, 1.0}};
    return g;
}

}  // namespace hgtest
