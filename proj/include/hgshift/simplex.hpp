#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgshift/common.hpp"

namespace hgshift {

/// A probabilistic coordinate over hyperedges: nonnegative entries with
/// unit L1 mass. Construction validates; negative crumbs below 1e-12 are
/// clamped and the vector is rescaled to sum exactly to one.
class SimplexVector {
public:
    SimplexVector() = default;

    static SimplexVector from_entries(std::vector<double> e) {
        if (e.empty()) throw std::invalid_argument("simplex vector must be nonempty");
        double sum = 0.0;
        for (double& x : e) {
            if (!std::isfinite(x)) throw std::invalid_argument("simplex entry not finite");
            if (x < 0.0) {
                if (x < -1e-12)
                    throw std::invalid_argument("negative simplex entry: " + fmt_double(x));
                x = 0.0;
            }
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("simplex entries sum to " + fmt_double(sum) +
                                        ", expected 1");
        SimplexVector p;
        p.e_ = std::move(e);
        p.rescale(sum);
        return p;
    }

    /// Scales an arbitrary nonnegative vector onto the simplex.
    static SimplexVector normalized(std::vector<double> e) {
        if (e.empty()) throw std::invalid_argument("simplex vector must be nonempty");
        double sum = 0.0;
        for (double& x : e) {
            if (!std::isfinite(x)) throw std::invalid_argument("simplex entry not finite");
            if (x < 0.0) {
                if (x < -1e-12)
                    throw std::invalid_argument("negative simplex entry: " + fmt_double(x));
                x = 0.0;
            }
            sum += x;
        }
        if (sum <= 0.0) throw std::invalid_argument("cannot normalize a zero vector");
        SimplexVector p;
        p.e_ = std::move(e);
        p.rescale(sum);
        return p;
    }

    static SimplexVector uniform(Index n) {
        if (n == 0) throw std::invalid_argument("simplex vector must be nonempty");
        return normalized(std::vector<double>(n, 1.0));
    }

    Index size() const { return e_.size(); }
    double operator[](Index i) const { return e_[i]; }
    const std::vector<double>& entries() const { return e_; }
    operator std::span<const double>() const { return {e_.data(), e_.size()}; }

private:
    void rescale(double sum) {
        if (sum != 1.0)
            for (double& x : e_) x /= sum;
    }

    std::vector<double> e_;
};

/// Indicator vector I_j in dimension n.
inline SimplexVector unit_indicator(Index j, Index n) {
    if (j >= n) throw std::out_of_range("indicator index out of range");
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    return SimplexVector::from_entries(std::move(e));
}

/// Support θ(p): indices with p_i strictly above the threshold.
inline std::vector<Index> support(const SimplexVector& p, double threshold) {
    if (threshold < 0.0) throw std::invalid_argument("support threshold must be nonnegative");
    std::vector<Index> s;
    for (Index i = 0; i < p.size(); ++i)
        if (p[i] > threshold) s.push_back(i);
    return s;
}

}  // namespace hgshift
