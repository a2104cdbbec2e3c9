#include "ollg/oseen_frank.hpp"

#include <cmath>
#include <random>
#include <string>

namespace ollg {

FrankConstants FrankConstants::make(double k1, double k2, double k3, double k4) {
    if (!(k1 > 0.0) || !(k2 > 0.0) || !(k3 > 0.0))
        throw std::invalid_argument("FrankConstants: k1, k2, k3 must be positive");
    if (!std::isfinite(k1) || !std::isfinite(k2) || !std::isfinite(k3) || !std::isfinite(k4))
        throw std::invalid_argument("FrankConstants: constants must be finite");
    FrankConstants K{k1, k2, k3, k4};
    const double a = K.a();
    // Positivity certificate behind the diffusion-term lemma.  Always
    // satisfiable with a = min(k1,k2,k3); checked anyway so a bad edit here
    // cannot silently break the audit.
    if (k2 - a < 0.0 || (k3 < k2 && (k2 - a) < (k2 - k3)))
        throw std::invalid_argument("FrankConstants: positivity certificate violated");
    return K;
}

GilbertParams GilbertParams::make(double alpha, double beta) {
    if (!(alpha >= 0.0))
        throw std::invalid_argument("GilbertParams: alpha must be >= 0");
    if (std::abs(alpha * alpha + beta * beta - 1.0) > 1e-14)
        throw std::invalid_argument("GilbertParams: alpha^2 + beta^2 must equal 1");
    return GilbertParams{alpha, beta};
}

GilbertParams GilbertParams::normalized(double alpha, double beta, double tol) {
    const double s = alpha * alpha + beta * beta;
    if (std::abs(s - 1.0) > tol)
        throw std::invalid_argument("GilbertParams: alpha^2 + beta^2 = " + std::to_string(s) +
                                    " deviates from 1 by more than " + std::to_string(tol));
    const double inv = 1.0 / std::sqrt(s);
    return make(alpha * inv, beta * inv);
}

void require_unit(const VectorField3& n, double tol) {
    const double defect = unit_norm_defect(n);
    if (defect > tol)
        throw std::invalid_argument("expected unit director field, max-norm defect " +
                                    std::to_string(defect));
}

namespace {

struct Gradients {
    VectorField3 g1, g2;
};

Gradients gradients(const VectorField3& n) {
    SpectralField F = forward_transform(n);
    SpectralField G1 = F;
    apply_multiplier(G1, [](double kx, double, double, std::complex<double>* v) {
        const std::complex<double> ik(0.0, kx);
        v[0] *= ik; v[1] *= ik; v[2] *= ik;
    });
    apply_multiplier(F, [](double, double ky, double, std::complex<double>* v) {
        const std::complex<double> ik(0.0, ky);
        v[0] *= ik; v[1] *= ik; v[2] *= ik;
    });
    return {inverse_transform(G1), inverse_transform(F)};
}

inline void curl_at(const double* g1, const double* g2, double* c) {
    c[0] = g2[2];
    c[1] = -g1[2];
    c[2] = g1[1] - g2[0];
}

} // namespace

ScalarField energy_density_raw(const VectorField3& n, const FrankConstants& K) {
    const Gradients g = gradients(n);
    ScalarField w(n.grid);
    const std::size_t nodes = n.grid.nodes();
    for (std::size_t i = 0; i < nodes; ++i) {
        const double* nv = n.node(i);
        const double* g1 = g.g1.node(i);
        const double* g2 = g.g2.node(i);
        double c[3];
        curl_at(g1, g2, c);
        const double div = g1[0] + g2[1];
        const double nc = nv[0] * c[0] + nv[1] * c[1] + nv[2] * c[2];
        const double nxc0 = nv[1] * c[2] - nv[2] * c[1];
        const double nxc1 = nv[2] * c[0] - nv[0] * c[2];
        const double nxc2 = nv[0] * c[1] - nv[1] * c[0];
        const double tr2 = g1[0] * g1[0] + 2.0 * g1[1] * g2[0] + g2[1] * g2[1];
        w.values[i] = K.k1 * div * div + K.k2 * (nxc0 * nxc0 + nxc1 * nxc1 + nxc2 * nxc2) +
                      K.k3 * nc * nc + (K.k2 + K.k4) * (tr2 - div * div);
    }
    return w;
}

EnergyBreakdown total_energy_raw(const VectorField3& n, const FrankConstants& K) {
    const Gradients g = gradients(n);
    const std::size_t nodes = n.grid.nodes();
    double splay = 0.0, twist = 0.0, bend = 0.0, nullterm = 0.0, grad2 = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
        const double* nv = n.node(i);
        const double* g1 = g.g1.node(i);
        const double* g2 = g.g2.node(i);
        double c[3];
        curl_at(g1, g2, c);
        const double div = g1[0] + g2[1];
        const double nc = nv[0] * c[0] + nv[1] * c[1] + nv[2] * c[2];
        const double nxc0 = nv[1] * c[2] - nv[2] * c[1];
        const double nxc1 = nv[2] * c[0] - nv[0] * c[2];
        const double nxc2 = nv[0] * c[1] - nv[1] * c[0];
        const double tr2 = g1[0] * g1[0] + 2.0 * g1[1] * g2[0] + g2[1] * g2[1];
        splay += div * div;
        twist += nxc0 * nxc0 + nxc1 * nxc1 + nxc2 * nxc2;
        bend += nc * nc;
        nullterm += tr2 - div * div;
        for (int c3 = 0; c3 < 3; ++c3) grad2 += g1[c3] * g1[c3] + g2[c3] * g2[c3];
    }
    const double da = n.grid.cell_area();
    EnergyBreakdown e;
    const double a = K.a();
    e.splay = K.k1 * splay * da;
    e.twist = K.k2 * twist * da;
    e.bend = K.k3 * bend * da;
    e.null_lagrangian = (K.k2 + K.k4) * nullterm * da;
    e.total = e.splay + e.twist + e.bend + e.null_lagrangian;
    e.grad_l2_sq = grad2 * da;
    e.dirichlet_part = a * e.grad_l2_sq;
    e.v_part = ((K.k1 - a) * splay + (K.k2 - a) * twist + (K.k3 - a) * bend) * da;
    return e;
}

ScalarField energy_density(const DirectorField& n, const FrankConstants& K) {
    return energy_density_raw(n.field(), K);
}

EnergyBreakdown total_energy(const DirectorField& n, const FrankConstants& K) {
    return total_energy_raw(n.field(), K);
}

VectorField3 molecular_field_raw(const VectorField3& n, const FrankConstants& K) {
    const double a = K.a();
    SpectralField F = forward_transform(n);

    // Linear part 2a Lap + 2(k1-a) grad div - 2(k2-a) curl curl, one multiplier.
    SpectralField Lin = F;
    const double c_lap = 2.0 * a;
    const double c_gd = 2.0 * (K.k1 - a);
    const double c_cc = 2.0 * (K.k2 - a);
    apply_multiplier(Lin, [=](double kx, double ky, double, std::complex<double>* v) {
        const double k2 = kx * kx + ky * ky;
        const std::complex<double> kdotf = kx * v[0] + ky * v[1];
        const std::complex<double> f0 = v[0], f1 = v[1], f2 = v[2];
        v[0] = -c_lap * k2 * f0 - c_gd * kx * kdotf - c_cc * (k2 * f0 - kx * kdotf);
        v[1] = -c_lap * k2 * f1 - c_gd * ky * kdotf - c_cc * (k2 * f1 - ky * kdotf);
        v[2] = -c_lap * k2 * f2 - c_cc * k2 * f2;
    });
    VectorField3 h = inverse_transform(Lin);

    if (K.k3 != K.k2) {
        apply_multiplier(F, [](double kx, double ky, double, std::complex<double>* v) {
            const std::complex<double> ikx(0.0, kx), iky(0.0, ky);
            const std::complex<double> f0 = v[0], f1 = v[1], f2 = v[2];
            v[0] = iky * f2;
            v[1] = -ikx * f2;
            v[2] = ikx * f1 - iky * f0;
        });
        const VectorField3 c = inverse_transform(F);

        const std::size_t nodes = n.grid.nodes();
        VectorField3 w(n.grid);
        std::vector<double> s(nodes);
        for (std::size_t i = 0; i < nodes; ++i) {
            const double* nv = n.node(i);
            const double* cv = c.node(i);
            s[i] = nv[0] * cv[0] + nv[1] * cv[1] + nv[2] * cv[2];
            double* wv = w.node(i);
            wv[0] = s[i] * nv[0];
            wv[1] = s[i] * nv[1];
            wv[2] = s[i] * nv[2];
        }
        SpectralField Wf = forward_transform(w);
        apply_multiplier(Wf, [](double kx, double ky, double, std::complex<double>* v) {
            const std::complex<double> ikx(0.0, kx), iky(0.0, ky);
            const std::complex<double> f0 = v[0], f1 = v[1], f2 = v[2];
            v[0] = iky * f2;
            v[1] = -ikx * f2;
            v[2] = ikx * f1 - iky * f0;
        });
        const VectorField3 cw = inverse_transform(Wf);

        const double c32 = 2.0 * (K.k3 - K.k2);
        for (std::size_t i = 0; i < nodes; ++i) {
            double* hv = h.node(i);
            const double* cwv = cw.node(i);
            const double* cv = c.node(i);
            for (int c3 = 0; c3 < 3; ++c3) hv[c3] -= c32 * (cwv[c3] + s[i] * cv[c3]);
        }
    }
    return h;
}

VectorField3 molecular_field(const DirectorField& n, const FrankConstants& K) {
    return molecular_field_raw(n.field(), K);
}

FieldSplit split_field(const DirectorField& n, const VectorField3& h, const FrankConstants& K) {
    require_same_grid(n.grid(), h.grid, "split_field");
    const VectorField3& nf = n.field();
    const std::size_t nodes = nf.grid.nodes();

    FieldSplit out;
    out.tangential = VectorField3(nf.grid);
    out.normal_scalar = ScalarField(nf.grid);
    for (std::size_t i = 0; i < nodes; ++i) {
        const double* nv = nf.node(i);
        const double* hv = h.node(i);
        const double hn = nv[0] * hv[0] + nv[1] * hv[1] + nv[2] * hv[2];
        out.normal_scalar.values[i] = hn;
        double* t = out.tangential.node(i);
        for (int c = 0; c < 3; ++c) t[c] = hv[c] - hn * nv[c];
    }

    const VectorCalculus vc = vector_calculus(nf);
    const double a = K.a();
    out.normal_closed_form = ScalarField(nf.grid);
    for (std::size_t i = 0; i < nodes; ++i) {
        const double* nv = nf.node(i);
        const double* g1 = vc.grad1.node(i);
        const double* g2 = vc.grad2.node(i);
        const double* gd = vc.grad_div.node(i);
        const double* cc = vc.curl_curl.node(i);
        const double* c = vc.curl.node(i);
        double grad2 = 0.0;
        for (int c3 = 0; c3 < 3; ++c3) grad2 += g1[c3] * g1[c3] + g2[c3] * g2[c3];
        const double n_gd = nv[0] * gd[0] + nv[1] * gd[1] + nv[2] * gd[2];
        const double n_cc = nv[0] * cc[0] + nv[1] * cc[1] + nv[2] * cc[2];
        const double nc = nv[0] * c[0] + nv[1] * c[1] + nv[2] * c[2];
        out.normal_closed_form.values[i] = -2.0 * a * grad2 + 2.0 * (K.k1 - a) * n_gd -
                                           2.0 * (K.k2 - a) * n_cc -
                                           4.0 * (K.k3 - K.k2) * nc * nc;
    }
    return out;
}

TraceIdentity wp_trace_identity(const DirectorField& n, const FrankConstants& K) {
    const VectorField3& nf = n.field();
    const std::size_t nodes = nf.grid.nodes();
    const VectorField3 h = molecular_field(n, K);
    const VectorCalculus vc = vector_calculus(nf);

    TraceIdentity out;
    out.lhs = ScalarField(nf.grid);
    out.rhs = ScalarField(nf.grid);

    // div(n div n) needs one more spectral pass over the product field.
    VectorField3 ndiv(nf.grid);
    for (std::size_t i = 0; i < nodes; ++i) {
        const double d = vc.divergence.values[i];
        const double* nv = nf.node(i);
        double* q = ndiv.node(i);
        q[0] = nv[0] * d;
        q[1] = nv[1] * d;
        q[2] = nv[2] * d;
    }
    const VectorField3 d1 = spectral_derivative(ndiv, 1);
    const VectorField3 d2 = spectral_derivative(ndiv, 2);

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
        const double* nv = nf.node(i);
        const double* hv = h.node(i);
        const double* cv = vc.curl.node(i);
        const double* g1 = vc.grad1.node(i);
        const double* g2 = vc.grad2.node(i);
        const double nc = nv[0] * cv[0] + nv[1] * cv[1] + nv[2] * cv[2];
        const double wn0 = 2.0 * (K.k3 - K.k2) * nc;
        // lhs = (h + W_n) . n with W_n = 2(k3-k2)(n.curl n) curl n
        const double lhs = (hv[0] + wn0 * cv[0]) * nv[0] + (hv[1] + wn0 * cv[1]) * nv[1] +
                           (hv[2] + wn0 * cv[2]) * nv[2];
        double grad2 = 0.0;
        for (int c3 = 0; c3 < 3; ++c3) grad2 += g1[c3] * g1[c3] + g2[c3] * g2[c3];
        const double div = vc.divergence.values[i];
        const double div_ndiv = d1.node(i)[0] + d2.node(i)[1];
        const double rhs = -2.0 * K.k2 * grad2 - 2.0 * (K.k3 - K.k2) * nc * nc -
                           2.0 * (K.k1 - K.k2) * div * div + 2.0 * (K.k1 - K.k2) * div_ndiv;
        out.lhs.values[i] = lhs;
        out.rhs.values[i] = rhs;
        num += (lhs - rhs) * (lhs - rhs);
        den += lhs * lhs;
    }
    out.residual = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    return out;
}

bool positivity_check(const FrankConstants& K, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("positivity_check: trials must be >= 1");
    const double a = K.a();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int m = 256;  // nodes per trial; the inequality is pointwise-summed
    for (int t = 0; t < trials; ++t) {
        double f_norm2 = 0.0, nf_norm2 = 0.0;
        for (int i = 0; i < m; ++i) {
            double f[3], n[3];
            for (int c = 0; c < 3; ++c) f[c] = gauss(rng);
            double mag = 0.0;
            do {
                for (int c = 0; c < 3; ++c) n[c] = gauss(rng);
                mag = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
            } while (mag < 1e-6);
            for (int c = 0; c < 3; ++c) n[c] /= mag;
            f_norm2 += f[0] * f[0] + f[1] * f[1] + f[2] * f[2];
            const double nf = n[0] * f[0] + n[1] * f[1] + n[2] * f[2];
            nf_norm2 += nf * nf;
        }
        const double value = (K.k2 - a) * f_norm2 + (K.k3 - K.k2) * nf_norm2;
        if (value < -1e-12 * f_norm2) return false;
    }
    return true;
}

} // namespace ollg
