#pragma once

#include <cmath>
#include <random>

#include "ollg/field.hpp"
#include "ollg/initial_data.hpp"

namespace ollg::test {

/// Seeded band-limited (|m|_inf <= modes) real field, not unit-norm.
inline VectorField3 random_band_limited(const GridSpec& grid, int modes, std::uint64_t seed,
                                        double amplitude = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    struct Term {
        double kx, ky, a, b;
    };
    std::vector<std::array<Term, 3>> terms;
    for (int m1 = 0; m1 <= modes; ++m1)
        for (int m2 = (m1 == 0 ? 0 : -modes); m2 <= modes; ++m2) {
            std::array<Term, 3> t;
            for (int c = 0; c < 3; ++c) {
                t[c] = {2.0 * M_PI / grid.length * m1, 2.0 * M_PI / grid.length * m2,
                        gauss(rng), gauss(rng)};
            }
            terms.push_back(t);
        }
    VectorField3 f(grid);
    const double dx = grid.spacing();
    const double scale = amplitude / std::sqrt(static_cast<double>(terms.size()));
    for (int i = 0; i < grid.n_side; ++i)
        for (int j = 0; j < grid.n_side; ++j) {
            double* v = f.node(static_cast<std::size_t>(i) * grid.n_side + j);
            for (const auto& t : terms)
                for (int c = 0; c < 3; ++c) {
                    const double ph = t[c].kx * i * dx + t[c].ky * j * dx;
                    v[c] += scale * (t[c].a * std::cos(ph) + t[c].b * std::sin(ph));
                }
        }
    return f;
}

/// Seeded random unit director field with background (0,0,1).
inline DirectorField random_unit_field(const GridSpec& grid, std::uint64_t seed,
                                       double amplitude = 0.4, int modes = 3) {
    InitialSpec spec;
    spec.kind = InitialSpec::Kind::random_smooth;
    spec.amplitude = amplitude;
    spec.modes = modes;
    spec.seed = seed;
    return generate_initial(spec, grid);
}

inline double rel_l2(const VectorField3& got, const VectorField3& want) {
    const double denom = std::sqrt(want.l2_norm_sq());
    return l2_diff(got, want) / (denom > 0 ? denom : 1.0);
}

} // namespace ollg::test
