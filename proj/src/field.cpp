#include "ollg/field.hpp"

#include <cmath>
#include <string>

namespace ollg {

double ScalarField::l2_norm_sq() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return s * grid.cell_area();
}

double ScalarField::integral() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * grid.cell_area();
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double VectorField3::l2_norm_sq() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return s * grid.cell_area();
}

double VectorField3::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

bool VectorField3::all_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

double SpectralField::hermitian_defect() const {
    const int n = grid.n_side;
    double defect = 0.0;
    for (int m1 = 0; m1 < n; ++m1)
        for (int m2 = 0; m2 < n; ++m2) {
            const int p1 = (n - m1) % n;
            const int p2 = (n - m2) % n;
            for (int c = 0; c < 3; ++c)
                defect = std::max(defect, std::abs(comp(m1, m2, c) - std::conj(comp(p1, p2, c))));
        }
    return defect;
}

DirectorField DirectorField::checked(VectorField3 f, double tol) {
    const double defect = unit_norm_defect(f);
    if (defect > tol)
        throw std::invalid_argument("DirectorField: unit-norm defect " + std::to_string(defect) +
                                    " exceeds tolerance " + std::to_string(tol));
    return DirectorField(std::move(f));
}

ScalarField dot(const VectorField3& a, const VectorField3& b) {
    require_same_grid(a.grid, b.grid, "dot");
    ScalarField out(a.grid);
    const std::size_t n = a.grid.nodes();
    for (std::size_t i = 0; i < n; ++i) {
        const double* pa = a.node(i);
        const double* pb = b.node(i);
        out.values[i] = pa[0] * pb[0] + pa[1] * pb[1] + pa[2] * pb[2];
    }
    return out;
}

VectorField3 cross(const VectorField3& a, const VectorField3& b) {
    require_same_grid(a.grid, b.grid, "cross");
    VectorField3 out(a.grid);
    const std::size_t n = a.grid.nodes();
    for (std::size_t i = 0; i < n; ++i) {
        const double* pa = a.node(i);
        const double* pb = b.node(i);
        double* po = out.node(i);
        po[0] = pa[1] * pb[2] - pa[2] * pb[1];
        po[1] = pa[2] * pb[0] - pa[0] * pb[2];
        po[2] = pa[0] * pb[1] - pa[1] * pb[0];
    }
    return out;
}

DirectorField normalize(const VectorField3& f) {
    VectorField3 out(f.grid);
    const std::size_t n = f.grid.nodes();
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = f.node(i);
        const double m2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        if (m2 < 1e-16)
            throw DegenerateFieldError(i, "normalize: near-zero node at index " + std::to_string(i));
        double* q = out.node(i);
        // nodes already unit to a few ulps pass through untouched, which
        // makes the projection idempotent at the bit level
        if (std::abs(m2 - 1.0) <= 1e-15) {
            q[0] = p[0];
            q[1] = p[1];
            q[2] = p[2];
            continue;
        }
        const double inv = 1.0 / std::sqrt(m2);
        q[0] = p[0] * inv;
        q[1] = p[1] * inv;
        q[2] = p[2] * inv;
    }
    return DirectorField(std::move(out));
}

double unit_norm_defect(const VectorField3& f) {
    double defect = 0.0;
    const std::size_t n = f.grid.nodes();
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = f.node(i);
        const double mag = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        defect = std::max(defect, std::abs(mag - 1.0));
    }
    return defect;
}

void axpy(double a, const VectorField3& x, VectorField3& y) {
    require_same_grid(x.grid, y.grid, "axpy");
    const std::size_t n = x.values.size();
    for (std::size_t i = 0; i < n; ++i) y.values[i] += a * x.values[i];
}

VectorField3 lin_comb(double a, const VectorField3& x, double b, const VectorField3& y) {
    require_same_grid(x.grid, y.grid, "lin_comb");
    VectorField3 out(x.grid);
    const std::size_t n = x.values.size();
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a * x.values[i] + b * y.values[i];
    return out;
}

double max_abs_diff(const VectorField3& a, const VectorField3& b) {
    require_same_grid(a.grid, b.grid, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

double l2_diff(const VectorField3& a, const VectorField3& b) {
    require_same_grid(a.grid, b.grid, "l2_diff");
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        s += d * d;
    }
    return std::sqrt(s * a.grid.cell_area());
}

} // namespace ollg
