#include "ollg/initial_data.hpp"

#include <cmath>
#include <random>
#include <string>

#include "ollg/spectral.hpp"

namespace ollg {

namespace {

// Seeded band-limited trig sum with RMS ~ 1, evaluated pointwise so the
// function does not depend on the grid resolution.
VectorField3 random_trig_field(const GridSpec& grid, int modes, std::uint64_t seed) {
    if (modes < 1 || 2 * modes + 2 > grid.n_side)
        throw std::invalid_argument("random_smooth: modes must satisfy 1 <= modes <= N/2 - 1");
    struct Term {
        double kx, ky, a, c;
    };
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::array<Term, 3>> terms;
    for (int m1 = 0; m1 <= modes; ++m1)
        for (int m2 = (m1 == 0 ? 1 : -modes); m2 <= modes; ++m2) {
            std::array<Term, 3> t;
            for (int c = 0; c < 3; ++c) {
                t[c].kx = 2.0 * M_PI / grid.length * m1;
                t[c].ky = 2.0 * M_PI / grid.length * m2;
                t[c].a = gauss(rng);
                t[c].c = gauss(rng);
            }
            terms.push_back(t);
        }
    const double scale = 1.0 / std::sqrt(2.0 * terms.size());

    VectorField3 f(grid);
    const double dx = grid.spacing();
    for (int i = 0; i < grid.n_side; ++i)
        for (int j = 0; j < grid.n_side; ++j) {
            const double x = i * dx, y = j * dx;
            double* v = f.node(static_cast<std::size_t>(i) * grid.n_side + j);
            for (const auto& t : terms)
                for (int c = 0; c < 3; ++c) {
                    const double ph = t[c].kx * x + t[c].ky * y;
                    v[c] += t[c].a * std::cos(ph) + t[c].c * std::sin(ph);
                }
            for (int c = 0; c < 3; ++c) v[c] *= scale;
        }
    return f;
}

VectorField3 constant_field(const GridSpec& grid, const std::array<double, 3>& b) {
    const double mag = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
    if (mag < 1e-8) throw std::invalid_argument("initial: background b must be non-zero");
    VectorField3 f(grid);
    for (std::size_t i = 0; i < grid.nodes(); ++i) {
        double* v = f.node(i);
        v[0] = b[0] / mag;
        v[1] = b[1] / mag;
        v[2] = b[2] / mag;
    }
    return f;
}

VectorField3 stripe_field(const GridSpec& grid, double amplitude, int mode) {
    if (mode < 1 || mode > grid.n_side / 4)
        throw std::invalid_argument("twisted_stripe: mode must lie in [1, N/4]");
    VectorField3 f(grid);
    const double dx = grid.spacing();
    for (int i = 0; i < grid.n_side; ++i) {
        const double th = amplitude * std::sin(2.0 * M_PI * mode * i * dx / grid.length);
        const double c = std::cos(th), s = std::sin(th);
        for (int j = 0; j < grid.n_side; ++j) {
            double* v = f.node(static_cast<std::size_t>(i) * grid.n_side + j);
            v[0] = c;
            v[1] = s;
            v[2] = 0.0;
        }
    }
    return f;
}

// Rotation taking e3 to the unit vector b.
void rotate_from_e3(const std::array<double, 3>& b_unit, double* v) {
    const double bx = b_unit[0], by = b_unit[1], bz = b_unit[2];
    if (bz > 1.0 - 1e-12) return;
    if (bz < -1.0 + 1e-12) {   // antipodal: rotate by pi about e1
        v[1] = -v[1];
        v[2] = -v[2];
        return;
    }
    // Rodrigues about axis e3 x b
    double ax = -by, ay = bx, az = 0.0;
    const double an = std::sqrt(ax * ax + ay * ay);
    ax /= an;
    ay /= an;
    const double ct = bz, st = an;
    const double adotv = ax * v[0] + ay * v[1] + az * v[2];
    const double cx = ay * v[2] - az * v[1];
    const double cy = az * v[0] - ax * v[2];
    const double cz = ax * v[1] - ay * v[0];
    v[0] = v[0] * ct + cx * st + ax * adotv * (1.0 - ct);
    v[1] = v[1] * ct + cy * st + ay * adotv * (1.0 - ct);
    v[2] = v[2] * ct + cz * st + az * adotv * (1.0 - ct);
}

VectorField3 bubble_field(const GridSpec& grid, const InitialSpec& spec) {
    const double dx = grid.spacing();
    const double L = grid.length;
    const double lam = spec.scale;
    if (!(lam >= 4.0 * dx - 1e-12 && lam <= L / 8.0 + 1e-12))
        throw std::invalid_argument("bubble: scale must lie in [4 dx, L/8]");
    const double bmag = std::sqrt(spec.b[0] * spec.b[0] + spec.b[1] * spec.b[1] +
                                  spec.b[2] * spec.b[2]);
    if (bmag < 1e-8) throw std::invalid_argument("initial: background b must be non-zero");
    const std::array<double, 3> bu{spec.b[0] / bmag, spec.b[1] / bmag, spec.b[2] / bmag};

    // Inverse-stereographic polar profile (south pole at the center, degree 1)
    // closed to the background inside B_{4 lambda}: the taper over [1.5l, 4l]
    // finishes covering the far cap, so the datum is exactly b outside the
    // ball and the Dirichlet energy sits where the concentration diagnostics
    // look for it.
    const double cx = spec.center_x * L, cy = spec.center_y * L;
    const double r0 = 1.5 * lam, r1 = 4.0 * lam;

    VectorField3 f(grid);
    for (int i = 0; i < grid.n_side; ++i)
        for (int j = 0; j < grid.n_side; ++j) {
            double ux = i * dx - cx, uy = j * dx - cy;
            ux -= L * std::round(ux / L);
            uy -= L * std::round(uy / L);
            const double r = std::sqrt(ux * ux + uy * uy);
            const double theta = 2.0 * std::atan2(lam, r) * smooth_step((r1 - r) / (r1 - r0));
            const double s = std::sin(theta);
            double v[3];
            if (r > 0.0) {
                v[0] = s * ux / r;
                v[1] = s * uy / r;
            } else {
                v[0] = v[1] = 0.0;
            }
            v[2] = std::cos(theta);
            rotate_from_e3(bu, v);
            double* o = f.node(static_cast<std::size_t>(i) * grid.n_side + j);
            for (int c = 0; c < 3; ++c) o[c] = v[c];
        }
    return f;
}

// Zero the top of the spectrum, reproject to the sphere, repeat.  Each pass
// squares the residual the previous normalization pushed back above the
// cut, so two passes reach the tail target.
VectorField3 bandlimit_and_normalize(VectorField3 f, int passes) {
    // pass band |k| <= 0.25 k_ax, zero beyond 0.5 k_ax: products of retained
    // modes stay on the lattice, and the outer tenth of the spectrum gets
    // only the (tiny) normalization regrowth
    const double cutoff = 0.25 * f.grid.k_axis_max();
    for (int p = 0; p < passes; ++p) {
        f = low_pass_filter(f, cutoff);
        f = normalize(f).field();
    }
    return f;
}

} // namespace

DirectorField generate_initial(const InitialSpec& spec, const GridSpec& grid) {
    VectorField3 f;
    bool needs_filter = false;
    switch (spec.kind) {
        case InitialSpec::Kind::constant:
            f = constant_field(grid, spec.b);
            break;
        case InitialSpec::Kind::twisted_stripe:
            f = stripe_field(grid, spec.amplitude, spec.mode);
            break;
        case InitialSpec::Kind::bubble:
            f = bubble_field(grid, spec);
            needs_filter = true;
            break;
        case InitialSpec::Kind::random_smooth: {
            f = random_trig_field(grid, spec.modes, spec.seed);
            const VectorField3 base = constant_field(grid, spec.b);
            f = lin_comb(1.0, base, spec.amplitude, f);
            break;
        }
    }

    if (spec.perturbation > 0.0) {
        const VectorField3 g = random_trig_field(grid, spec.modes, spec.perturbation_seed);
        axpy(spec.perturbation, g, f);
    }

    if (needs_filter) return normalize(bandlimit_and_normalize(std::move(f), 3));
    return normalize(f);
}

const char* to_string(InitialSpec::Kind k) {
    switch (k) {
        case InitialSpec::Kind::constant: return "constant";
        case InitialSpec::Kind::twisted_stripe: return "twisted_stripe";
        case InitialSpec::Kind::bubble: return "bubble";
        case InitialSpec::Kind::random_smooth: return "random_smooth";
    }
    return "?";
}

InitialSpec::Kind kind_from_string(const std::string& s) {
    if (s == "constant") return InitialSpec::Kind::constant;
    if (s == "twisted_stripe") return InitialSpec::Kind::twisted_stripe;
    if (s == "bubble") return InitialSpec::Kind::bubble;
    if (s == "random_smooth") return InitialSpec::Kind::random_smooth;
    throw std::invalid_argument("initial.kind: unknown kind '" + s + "'");
}

} // namespace ollg
