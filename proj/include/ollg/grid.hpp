#pragma once

#include <cstddef>
#include <stdexcept>

namespace ollg {

/// Periodic N x N discretization of the square torus [0,L)^2.
///
/// Node (i,j) sits at (i*dx, j*dx) with dx = L/N.  The Fourier lattice per
/// axis is 2*pi/L * {-N/2, ..., N/2-1}; derivative multipliers zero the
/// unpaired Nyquist mode m = -N/2 so derivatives of real fields stay real.
struct GridSpec {
    int n_side = 0;
    double length = 0.0;

    double spacing() const { return length / n_side; }
    std::size_t nodes() const { return static_cast<std::size_t>(n_side) * n_side; }
    double cell_area() const { return spacing() * spacing(); }

    /// Signed integer frequency for storage index m in [0, N).
    int signed_mode(int m) const { return m < n_side / 2 ? m : m - n_side; }

    /// Physical wavenumber for storage index m; Nyquist not special-cased.
    double wavenumber(int m) const;

    /// Derivative multiplier wavenumber: as wavenumber() but 0 at Nyquist.
    double wavenumber_deriv(int m) const;

    /// Largest |k| on the lattice (corner mode, Nyquist included).
    double k_max() const;

    /// Largest per-axis derivative wavenumber (Nyquist excluded).
    double k_axis_max() const { return wavenumber(n_side / 2 - 1); }

    bool operator==(const GridSpec&) const = default;

    /// Validates n_side >= 8 and even, length > 0.  Throws std::invalid_argument.
    static GridSpec make(int n_side, double length);
};

} // namespace ollg
