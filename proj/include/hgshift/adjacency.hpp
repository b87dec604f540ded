#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "hgshift/common.hpp"
#include "hgshift/hypergraph.hpp"

namespace hgshift {

/// Dense symmetric hyperedge-affinity matrix with an exactly zero diagonal.
/// Entries are nonnegative; M(i,j) > 0 only when hyperedges i and j overlap.
class HyperedgeAdjacency {
public:
    HyperedgeAdjacency() = default;
    explicit HyperedgeAdjacency(Index n) : n_(n), a_(n * n, 0.0) {}

    /// Builds from explicit rows, validating symmetry, nonnegativity and a
    /// zero diagonal. Intended for literals in tests and small drivers.
    static HyperedgeAdjacency from_dense(const std::vector<std::vector<double>>& rows) {
        HyperedgeAdjacency m(rows.size());
        for (Index i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size())
                throw std::invalid_argument("adjacency rows must form a square matrix");
            for (Index j = 0; j < rows.size(); ++j) {
                double v = rows[i][j];
                if (!std::isfinite(v) || v < 0.0)
                    throw std::invalid_argument("adjacency entries must be finite and nonnegative");
                if (i == j && v != 0.0)
                    throw std::invalid_argument("adjacency diagonal must be zero");
                if (rows[j][i] != v)
                    throw std::invalid_argument("adjacency must be symmetric");
                m.a_[i * rows.size() + j] = v;
            }
        }
        return m;
    }

    Index size() const { return n_; }

    double operator()(Index i, Index j) const { return a_[i * n_ + j]; }

    /// Sets M(i,j) = M(j,i) = v. The diagonal stays zero.
    void set(Index i, Index j, double v) {
        if (i >= n_ || j >= n_) throw std::out_of_range("adjacency index out of range");
        if (i == j) {
            if (v != 0.0) throw std::invalid_argument("adjacency diagonal must be zero");
            return;
        }
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("adjacency entries must be finite and nonnegative");
        a_[i * n_ + j] = v;
        a_[j * n_ + i] = v;
    }

    /// (M p)_j for all j. Skips zero entries of p, so the cost is
    /// O(n * nnz(p)); the accumulation order is fixed by index.
    std::vector<double> matvec(std::span<const double> p) const {
        if (p.size() != n_) throw std::invalid_argument("dimension mismatch in matvec");
        std::vector<double> out(n_, 0.0);
        for (Index i = 0; i < n_; ++i) {
            double pi = p[i];
            if (pi == 0.0) continue;
            const double* row = &a_[i * n_];
            for (Index j = 0; j < n_; ++j) out[j] += row[j] * pi;
        }
        return out;
    }

    /// Quadratic form pᵀMp.
    double quadratic(std::span<const double> p) const {
        std::vector<double> g = matvec(p);
        double sum = 0.0;
        for (Index i = 0; i < n_; ++i) sum += p[i] * g[i];
        return sum;
    }

    /// Bilinear form xᵀMy.
    double bilinear(std::span<const double> x, std::span<const double> y) const {
        if (x.size() != n_ || y.size() != n_)
            throw std::invalid_argument("dimension mismatch in bilinear form");
        std::vector<double> g = matvec(y);
        double sum = 0.0;
        for (Index i = 0; i < n_; ++i) sum += x[i] * g[i];
        return sum;
    }

    /// Indices j with M(i,j) > 0.
    std::vector<Index> neighbors(Index i) const {
        if (i >= n_) throw std::out_of_range("adjacency index out of range");
        std::vector<Index> out;
        const double* row = &a_[i * n_];
        for (Index j = 0; j < n_; ++j)
            if (row[j] > 0.0) out.push_back(j);
        return out;
    }

    double max_entry() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, v);
        return m;
    }

private:
    Index n_ = 0;
    std::vector<double> a_;
};

/// Builds the hyperedge-adjacency matrix: for i != j,
/// M(i,j) = w(e_i)·|e_i∩e_j|/δ(e_i) + w(e_j)·|e_i∩e_j|/δ(e_j), and zero on
/// the diagonal. The hypergraph must validate (so every δ(e_i) > 0).
inline HyperedgeAdjacency build_adjacency(const Hypergraph& g) {
    if (auto issue = validate(g))
        throw std::invalid_argument("invalid hypergraph: " + *issue);
    const Index n = g.edge_count();
    HyperedgeAdjacency m(n);

    std::vector<double> degree(n);
    for (Index i = 0; i < n; ++i) degree[i] = hyperedge_degree(g, i);

    // Accumulate shared mass through a vertex -> incident edges index so
    // disjoint pairs cost nothing.
    std::vector<std::vector<std::pair<Index, double>>> incident(g.vertex_count);
    for (Index e = 0; e < n; ++e)
        for (const auto& [v, h] : g.hyperedges[e].members) incident[v].emplace_back(e, h);

    std::vector<double> mass(n * n, 0.0);
    for (Index v = 0; v < g.vertex_count; ++v) {
        const auto& inc = incident[v];
        for (Index a = 0; a < inc.size(); ++a)
            for (Index b = a + 1; b < inc.size(); ++b) {
                double shared = std::min(inc[a].second, inc[b].second);
                mass[inc[a].first * n + inc[b].first] += shared;
                mass[inc[b].first * n + inc[a].first] += shared;
            }
    }
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j) {
            double shared = mass[i * n + j];
            if (shared == 0.0) continue;
            double value = g.hyperedges[i].weight * (shared / degree[i]) +
                           g.hyperedges[j].weight * (shared / degree[j]);
            m.set(i, j, value);
        }
    return m;
}

/// Symmetric boolean mask of vertex overlap between hyperedges, used where
/// the voting formulas ask for e_i ∩ e_j != ∅ (which can differ from
/// M(i,j) > 0 only for zero-weight hyperedges).
class OverlapMask {
public:
    OverlapMask() = default;

    static OverlapMask from_hypergraph(const Hypergraph& g) {
        OverlapMask o;
        o.n_ = g.edge_count();
        o.bits_.assign(o.n_ * o.n_, 0);
        std::vector<std::vector<Index>> incident(g.vertex_count);
        for (Index e = 0; e < o.n_; ++e)
            for (const auto& [v, h] : g.hyperedges[e].members) incident[v].push_back(e);
        for (const auto& inc : incident)
            for (Index a = 0; a < inc.size(); ++a)
                for (Index b = a + 1; b < inc.size(); ++b) {
                    o.bits_[inc[a] * o.n_ + inc[b]] = 1;
                    o.bits_[inc[b] * o.n_ + inc[a]] = 1;
                }
        return o;
    }

    /// Overlap inferred from positive affinity; exact whenever weights are
    /// positive. Convenient for matrix-only tests.
    static OverlapMask from_affinity(const HyperedgeAdjacency& m) {
        OverlapMask o;
        o.n_ = m.size();
        o.bits_.assign(o.n_ * o.n_, 0);
        for (Index i = 0; i < o.n_; ++i)
            for (Index j = 0; j < o.n_; ++j)
                if (m(i, j) > 0.0) o.bits_[i * o.n_ + j] = 1;
        return o;
    }

    Index size() const { return n_; }
    bool operator()(Index i, Index j) const { return bits_[i * n_ + j] != 0; }

private:
    Index n_ = 0;
    std::vector<unsigned char> bits_;
};

}  // namespace hgshift
