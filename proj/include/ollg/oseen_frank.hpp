#pragma once

#include <cstdint>

#include "ollg/field.hpp"
#include "ollg/frank.hpp"
#include "ollg/spectral.hpp"

namespace ollg {

/// Pointwise Oseen-Frank density
///   W = k1 (div n)^2 + k2 |n x curl n|^2 + k3 (n . curl n)^2
///     + (k2+k4)(tr(grad n)^2 - (div n)^2),
/// with tr(grad n)^2 = sum_{i,j in {1,2}} d_i n_j d_j n_i (planar gradient).
ScalarField energy_density(const DirectorField& n, const FrankConstants& K);

EnergyBreakdown total_energy(const DirectorField& n, const FrankConstants& K);

/// Formula-level variants without the unit-norm gate; used on mollified
/// states whose norm drifts from 1.
ScalarField energy_density_raw(const VectorField3& n, const FrankConstants& K);
EnergyBreakdown total_energy_raw(const VectorField3& n, const FrankConstants& K);

/// Molecular field
///   h = 2a Lap n + 2(k1-a) grad div n - 2(k2-a) curl curl n
///     - 2(k3-k2) curl((curl n . n) n) - 2(k3-k2)(curl n . n) curl n.
/// k4 never enters (null-Lagrangian term has vanishing variation).
VectorField3 molecular_field(const DirectorField& n, const FrankConstants& K);
VectorField3 molecular_field_raw(const VectorField3& n, const FrankConstants& K);

/// Brute-force central difference of the discrete energy:
///   component l at node x = -(E(n + s e_l 1_x) - E(n - s e_l 1_x)) / (2 s dx^2).
/// No sphere projection of the perturbations.  The evaluation exploits that a
/// one-node bump perturbs the spectral gradient only on the row/column
/// through the node; the value is the literal two-energy difference up to
/// floating-point reassociation (see tests for the naive cross-check).
/// step must lie in [1e-8, 1e-4].
VectorField3 variational_oracle(const DirectorField& n, const FrankConstants& K, double step);

/// Same central difference evaluated the obvious way (two full energy sums
/// per node/component).  O(N^4); only sensible at small N, kept as the
/// independence anchor for the fast path.
VectorField3 variational_oracle_naive(const DirectorField& n, const FrankConstants& K, double step);

struct FieldSplit {
    VectorField3 tangential;        // n x (h x n) = h - (h.n) n
    ScalarField normal_scalar;      // h . n
    ScalarField normal_closed_form; // -2a|grad n|^2 + 2(k1-a) n.grad div n
                                    //  - 2(k2-a) n.curl curl n - 4(k3-k2)(n.curl n)^2
};

FieldSplit split_field(const DirectorField& n, const VectorField3& h, const FrankConstants& K);

struct TraceIdentity {
    ScalarField lhs;   // (grad_i W_{p_i^l}) . n = (h + W_n) . n
    ScalarField rhs;   // -2k2|grad n|^2 - 2(k3-k2)(n.curl n)^2 - 2(k1-k2)(div n)^2
                       //  + 2(k1-k2) div(n div n)
    double residual;   // ||lhs-rhs||_2 / ||lhs||_2
};

TraceIdentity wp_trace_identity(const DirectorField& n, const FrankConstants& K);

/// Random audit of (k2-a)||f||^2 + (k3-k2)||n.f||^2 >= 0 over seeded
/// (f, n) pairs; true iff no trial dips below -1e-12 * ||f||^2.
bool positivity_check(const FrankConstants& K, int trials, std::uint64_t seed = 2024);

/// Unit-norm gate used by the operations above (1e-9 max-norm).
void require_unit(const VectorField3& n, double tol = 1e-9);

} // namespace ollg
