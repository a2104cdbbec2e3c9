#pragma once

#include "ollg/field.hpp"

namespace ollg {

// Transform convention: forward is the unnormalized DFT
//   F(m) = sum_x f(x) exp(-i k_m . x),
// inverse carries the 1/N^2.  Parseval: ||f||_L2^2 = dx^2/N^2 * sum |F|^2.

SpectralField forward_transform(const VectorField3& f);
VectorField3 inverse_transform(const SpectralField& F);

/// Largest |imag| produced when inverting F; diagnostic for realness checks.
double inverse_imag_max(const SpectralField& F);

/// Scalar transforms (used by tests and the direct-DFT oracle).
std::vector<std::complex<double>> forward_transform_scalar(const ScalarField& f);

/// d/dx_axis via the ik multiplier, axis in {1,2}.  Nyquist mode zeroed.
VectorField3 spectral_derivative(const VectorField3& f, int axis);

struct VectorCalculus {
    VectorField3 grad1;      // d/dx1 of each component
    VectorField3 grad2;      // d/dx2 of each component
    ScalarField divergence;  // d1 f1 + d2 f2
    VectorField3 curl;       // (d2 f3, -d1 f3, d1 f2 - d2 f1)
    VectorField3 laplacian;
    VectorField3 grad_div;
    VectorField3 curl_curl;
};

/// All first/second-derivative combinations in one spectral pass.
VectorCalculus vector_calculus(const VectorField3& f);

/// Friedrich mollifier J_eps: modes with |k| <= cutoff pass unchanged, modes
/// with |k| >= 2*cutoff are zeroed, smooth radial taper between.  Larger
/// cutoff = weaker mollification (identity once 2*k_max <= cutoff... i.e.
/// cutoff >= k_max passes the whole lattice).
VectorField3 low_pass_filter(const VectorField3& f, double cutoff);

/// C-infinity monotone step: 0 for t <= 0, 1 for t >= 1, built from
/// exp(-1/t) bumps.
double smooth_step(double t);

/// Radial taper of J_eps: 1 for rho <= 1, 0 for rho >= 2.
double lowpass_profile(double rho);

/// ||f||_L2^2 evaluated on the spectral side (Parseval route).
double spectral_l2_norm_sq(const SpectralField& F);

/// In-place per-mode map.  Callback sees the derivative wavenumbers
/// (kx, ky; Nyquist zeroed), the full radial |k| (Nyquist included), and the
/// 3 coefficients of the mode.
template <class Fn>
void apply_multiplier(SpectralField& F, Fn&& fn) {
    const int n = F.grid.n_side;
    for (int m1 = 0; m1 < n; ++m1) {
        const double kx = F.grid.wavenumber_deriv(m1);
        const double kx_full = F.grid.wavenumber(m1);
        for (int m2 = 0; m2 < n; ++m2) {
            const double ky = F.grid.wavenumber_deriv(m2);
            const double ky_full = F.grid.wavenumber(m2);
            const double kr = std::sqrt(kx_full * kx_full + ky_full * ky_full);
            fn(kx, ky, kr, &F.coeff[3 * (static_cast<std::size_t>(m1) * n + m2)]);
        }
    }
}

} // namespace ollg
