#pragma once

#include <cstdint>
#include <vector>

#include "ollg/field.hpp"
#include "ollg/frank.hpp"

namespace ollg {

/// Dyadic radial cutoffs on the discrete Fourier lattice.
///
/// chi is 1 on {r <= 3/4}, 0 on {r >= 4/3}; phi(r) = chi(r/2) - chi(r) is
/// supported in {3/4 <= r <= 8/3}.  Blocks are Delta_{-1} = chi(|D|) and
/// Delta_j = phi(2^{-j}|D|) for 0 <= j <= j_max.  Built so the telescoping
/// identity chi + sum phi(2^{-j}.) = 1 cancels exactly in floating point.
struct DyadicPartition {
    GridSpec grid;
    int j_min = -1;
    int j_max = 0;

    double chi(double r) const;
    double phi(double r) const { return chi(0.5 * r) - chi(r); }

    /// Multiplier of block j at lattice radius r (j = -1 is the chi block).
    double block_multiplier(int j, double r) const;
};

/// j_max is the largest j with 2^j * 3/4 <= k_max (lattice corner radius);
/// throws if the grid is too small for j_max >= 1.
DyadicPartition build_partition(const GridSpec& grid);

struct BlockSet {
    int j_min = -1;
    int j_max = 0;
    std::vector<VectorField3> blocks;   // blocks[j + 1] = Delta_j f

    const VectorField3& block(int j) const { return blocks[static_cast<std::size_t>(j + 1)]; }

    /// S_j f = sum_{k <= j-1} Delta_k f.
    VectorField3 partial_sum(int j) const;

    /// sum of all blocks (reconstruction of f).
    VectorField3 reconstruction() const;
};

BlockSet decompose(const VectorField3& f, const DyadicPartition& P);

inline constexpr int kLinf = -1;   // p = infinity marker for Besov norms

/// ||f||_{B^s_{p,inf}} = sup_{j >= -1} 2^{js} ||Delta_j f||_p with p in
/// {2, 4, kLinf}; q must be kLinf.  s restricted to (-2, 2).
double besov_norm(const VectorField3& f, const DyadicPartition& P, double s, int p,
                  int q = kLinf);

struct BernsteinReport {
    double first_derivative_p2 = 0.0;   // max ||d_i Delta_j f||_2 / (2^j ||Delta_j f||_2); sharp bound 8/3
    double embed_p2_to_inf = 0.0;       // max ||Delta_j f||_inf / (2^j ||Delta_j f||_2)
    double reverse_first = 0.0;         // max 2^j ||Delta_j f||_2 / max_i ||d_i Delta_j f||_2
};

/// Measures Bernstein constants on seeded random single-block fields
/// (annulus blocks j >= 0 only).  trials >= 10.
BernsteinReport bernstein_audit(const DyadicPartition& P, int trials, std::uint64_t seed = 11);

struct WeakMetric {
    double total = 0.0;                 // sup_j 2^{-2js} int W^j + ||Delta_{-1} dn||_2^2
    double low_block_l2_sq = 0.0;       // ||Delta_{-1} dn||_2^2
    std::vector<double> per_block;      // 2^{-2js} int W^j for j = 0..j_max
};

/// Frequency-weighted anisotropic energy of dn = n2 - n1; the k2/k3 terms
/// are weighted by n2 (asymmetric by construction).  s in (0,1).
WeakMetric weak_metric(const DirectorField& n1, const DirectorField& n2,
                       const DyadicPartition& P, const FrankConstants& K, double s);

} // namespace ollg
