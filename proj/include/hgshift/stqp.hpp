#pragma once

#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgshift/adjacency.hpp"
#include "hgshift/common.hpp"
#include "hgshift/simplex.hpp"

namespace hgshift {

inline constexpr double kDefaultSupportThreshold = 1e-8;
inline constexpr double kDefaultModeTol = 1e-6;

/// Hypergraph density F(p) = pᵀMp.
inline double density(const SimplexVector& p, const HyperedgeAdjacency& m) {
    if (p.size() != m.size()) throw std::invalid_argument("dimension mismatch in density");
    return m.quadratic(p);
}

/// Bilinear affinity m(x,y) = xᵀMy; affinity(p,p) equals density(p).
inline double affinity(const SimplexVector& x, const SimplexVector& y,
                       const HyperedgeAdjacency& m) {
    if (x.size() != m.size() || y.size() != m.size())
        throw std::invalid_argument("dimension mismatch in affinity");
    return m.bilinear(x, y);
}

/// Outcome of the first-order mode check. lambda is F(p); max_violation is
/// the largest off-support (Mp)_j − λ (−inf when the support is full);
/// support_residual is the largest on-support |(Mp)_i − λ|. A certificate is
/// a global mode when both KKT branches hold within the check tolerance.
struct ModeCertificate {
    SimplexVector mode;
    std::vector<Index> support;
    double lambda = 0.0;
    double max_violation = -std::numeric_limits<double>::infinity();
    double support_residual = 0.0;
    bool is_global_mode = false;
    bool converged = true;  // cleared by seek_mode on an iteration-cap breach
};

/// Evaluates the mode conditions at p: on-support affinities must equal λ
/// and off-support affinities must not exceed it, within tol (absolute).
inline ModeCertificate is_mode(const SimplexVector& p, const HyperedgeAdjacency& m,
                               double tol = kDefaultModeTol,
                               double support_threshold = kDefaultSupportThreshold) {
    if (p.size() != m.size()) throw std::invalid_argument("dimension mismatch in is_mode");
    ModeCertificate cert;
    cert.mode = p;
    cert.support = support(p, support_threshold);
    cert.lambda = density(p, m);
    std::vector<double> g = m.matvec(p);
    std::vector<bool> on(p.size(), false);
    for (Index i : cert.support) on[i] = true;
    for (Index i = 0; i < p.size(); ++i) {
        if (on[i]) {
            double r = std::abs(g[i] - cert.lambda);
            if (r > cert.support_residual) cert.support_residual = r;
        } else {
            double v = g[i] - cert.lambda;
            if (v > cert.max_violation) cert.max_violation = v;
        }
    }
    cert.is_global_mode =
        cert.max_violation <= tol && cert.support_residual <= tol;
    return cert;
}

/// Structured text rendering of a certificate.
inline std::string certificate_report(const ModeCertificate& cert) {
    std::string out;
    out += "mode certificate\n";
    out += "  is_global_mode: " + std::string(cert.is_global_mode ? "true" : "false") + "\n";
    out += "  converged: " + std::string(cert.converged ? "true" : "false") + "\n";
    out += "  lambda: " + fmt_double(cert.lambda) + "\n";
    out += "  support:";
    for (Index i : cert.support) out += " " + std::to_string(i);
    out += "\n";
    out += "  max_violation: " + fmt_double(cert.max_violation) + "\n";
    out += "  support_residual: " + fmt_double(cert.support_residual) + "\n";
    return out;
}

}  // namespace hgshift
