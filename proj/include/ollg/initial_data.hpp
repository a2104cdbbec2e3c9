#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "ollg/field.hpp"

namespace ollg {

/// Initial-datum recipe.  All recipes except `bubble` evaluate an
/// N-independent closed form pointwise, so the same spec on two grids
/// samples one continuum field (bubble applies a per-grid band-limit
/// filter before the final normalization).
struct InitialSpec {
    enum class Kind { constant, twisted_stripe, bubble, random_smooth };
    Kind kind = Kind::constant;

    std::array<double, 3> b{0.0, 0.0, 1.0};   // background director

    // twisted_stripe: n = (cos th, sin th, 0), th = amplitude sin(2 pi mode x1 / L)
    double amplitude = 0.3;
    int mode = 1;

    // bubble: inverse stereographic degree-1 map of scale `scale`, centered at
    // (center_x, center_y) * L, blended to b and band-limited.
    double scale = 0.0;
    double center_x = 0.5, center_y = 0.5;

    // random_smooth: b + amplitude * seeded trigonometric field with modes
    // |m|_inf <= `modes`, normalized.
    int modes = 3;
    std::uint64_t seed = 1;

    // optional seeded perturbation applied to any kind (compare experiments)
    double perturbation = 0.0;
    std::uint64_t perturbation_seed = 7;
};

/// Unit-norm, band-limited, deterministic given the spec.
/// bubble requires scale in [4 dx, L/8].
DirectorField generate_initial(const InitialSpec& spec, const GridSpec& grid);

const char* to_string(InitialSpec::Kind k);
InitialSpec::Kind kind_from_string(const std::string& s);

} // namespace ollg
