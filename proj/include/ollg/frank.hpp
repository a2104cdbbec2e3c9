#pragma once

#include <algorithm>
#include <stdexcept>

namespace ollg {

/// Elastic constants k1 (splay), k2 (twist), k3 (bend), k4 (saddle-splay
/// partner in the null-Lagrangian term).  a = min(k1,k2,k3).
struct FrankConstants {
    double k1 = 1.0, k2 = 1.0, k3 = 1.0, k4 = 0.0;

    double a() const { return std::min({k1, k2, k3}); }

    /// Validates k1,k2,k3 > 0 and the positivity certificate
    /// (k2-a) >= 0, and (k2-a) >= (k2-k3) whenever k3 < k2.
    static FrankConstants make(double k1, double k2, double k3, double k4);
};

/// Damping/gyromagnetic pair with alpha >= 0 and alpha^2 + beta^2 = 1.
struct GilbertParams {
    double alpha = 1.0, beta = 0.0;

    /// Requires alpha >= 0 and |alpha^2+beta^2-1| <= 1e-14.
    static GilbertParams make(double alpha, double beta);

    /// Accepts a pair within `tol` of the unit circle and rescales it onto
    /// the circle; rejects anything further away.
    static GilbertParams normalized(double alpha, double beta, double tol = 1e-6);
};

/// Per-term split of the total Oseen-Frank energy.
struct EnergyBreakdown {
    double splay = 0.0;            // k1 (div n)^2
    double twist = 0.0;            // k2 |n x curl n|^2
    double bend = 0.0;             // k3 (n . curl n)^2
    double null_lagrangian = 0.0;  // (k2+k4)(tr(grad n)^2 - (div n)^2)
    double total = 0.0;
    double dirichlet_part = 0.0;   // a ||grad n||^2
    double v_part = 0.0;           // total of V = W - a|grad n|^2 - (k2+k4-a)(null term density)
    double grad_l2_sq = 0.0;       // ||grad n||_2^2 (convenience for diagnostics)
};

} // namespace ollg
