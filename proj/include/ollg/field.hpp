#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ollg/grid.hpp"

namespace ollg {

/// Real scalar field on the grid, row-major.
struct ScalarField {
    GridSpec grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g) : grid(g), values(g.nodes(), 0.0) {}

    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.n_side + j]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.n_side + j]; }

    double l2_norm_sq() const;    // dx^2 * sum of squares
    double integral() const;      // dx^2 * sum
    double max_abs() const;
};

/// Real 3-component field on the grid; row-major nodes, components contiguous
/// per node (AoS).
struct VectorField3 {
    GridSpec grid;
    std::vector<double> values;   // 3 * nodes

    VectorField3() = default;
    explicit VectorField3(const GridSpec& g) : grid(g), values(3 * g.nodes(), 0.0) {}

    double* node(std::size_t idx) { return values.data() + 3 * idx; }
    const double* node(std::size_t idx) const { return values.data() + 3 * idx; }
    double& comp(int i, int j, int c) {
        return values[3 * (static_cast<std::size_t>(i) * grid.n_side + j) + c];
    }
    double comp(int i, int j, int c) const {
        return values[3 * (static_cast<std::size_t>(i) * grid.n_side + j) + c];
    }

    double l2_norm_sq() const;    // dx^2 * sum over nodes of |v|^2
    double max_abs() const;       // max over nodes and components
    bool all_finite() const;
};

/// Complex 3-component spectral coefficients on the full N x N mode lattice,
/// unnormalized forward DFT convention (see spectral.hpp).
struct SpectralField {
    GridSpec grid;
    std::vector<std::complex<double>> coeff;   // 3 * nodes, AoS per mode

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g) : grid(g), coeff(3 * g.nodes()) {}

    std::complex<double>& comp(int m1, int m2, int c) {
        return coeff[3 * (static_cast<std::size_t>(m1) * grid.n_side + m2) + c];
    }
    const std::complex<double>& comp(int m1, int m2, int c) const {
        return coeff[3 * (static_cast<std::size_t>(m1) * grid.n_side + m2) + c];
    }

    /// max |F(k) - conj(F(-k))| over the lattice; ~0 for spectra of real fields.
    double hermitian_defect() const;
};

struct DegenerateFieldError : std::runtime_error {
    std::size_t node_index;
    DegenerateFieldError(std::size_t idx, const std::string& what)
        : std::runtime_error(what), node_index(idx) {}
};

/// Unit-norm vector field.  Construction checks per-node |n| within tol of 1.
class DirectorField {
public:
    static constexpr double kUnitTol = 1e-12;

    /// Throws std::invalid_argument if any node deviates from unit norm by
    /// more than tol.
    static DirectorField checked(VectorField3 f, double tol = kUnitTol);

    const VectorField3& field() const { return field_; }
    const GridSpec& grid() const { return field_.grid; }
    operator const VectorField3&() const { return field_; }

private:
    explicit DirectorField(VectorField3 f) : field_(std::move(f)) {}
    VectorField3 field_;
    friend DirectorField normalize(const VectorField3&);
};

// ---- pointwise algebra ----

ScalarField dot(const VectorField3& a, const VectorField3& b);
VectorField3 cross(const VectorField3& a, const VectorField3& b);

/// Pointwise projection onto the unit sphere.  Throws DegenerateFieldError
/// (carrying the node index) if some node has |f| < 1e-8.
DirectorField normalize(const VectorField3& f);

/// Max-norm deviation of |n| from 1 over all nodes.
double unit_norm_defect(const VectorField3& f);

// ---- small linear-algebra helpers on raw field storage ----

void axpy(double a, const VectorField3& x, VectorField3& y);             // y += a*x
VectorField3 lin_comb(double a, const VectorField3& x, double b, const VectorField3& y);
double max_abs_diff(const VectorField3& a, const VectorField3& b);
double l2_diff(const VectorField3& a, const VectorField3& b);            // ||a-b||_2

inline void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where) {
    if (!(a == b)) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

} // namespace ollg
