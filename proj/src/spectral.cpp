#include "ollg/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace ollg {

namespace {

// One in-place c2c plan pair per grid side.  FFTW_ESTIMATE keeps planning
// deterministic; FFTW_UNALIGNED lets plans run on caller-owned buffers.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n) {
    static std::map<int, PlanPair> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
    PlanPair p;
    p.fwd = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    return cache.emplace(n, p).first->second;
}

void fft2(std::complex<double>* data, int n, bool forward) {
    PlanPair& p = plans_for(n);
    fftw_complex* d = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(forward ? p.fwd : p.bwd, d, d);
}

} // namespace

SpectralField forward_transform(const VectorField3& f) {
    const int n = f.grid.n_side;
    const std::size_t nodes = f.grid.nodes();
    SpectralField F(f.grid);
    std::vector<std::complex<double>> scratch(nodes);
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < nodes; ++i) scratch[i] = f.values[3 * i + c];
        fft2(scratch.data(), n, true);
        for (std::size_t i = 0; i < nodes; ++i) F.coeff[3 * i + c] = scratch[i];
    }
    return F;
}

VectorField3 inverse_transform(const SpectralField& F) {
    const int n = F.grid.n_side;
    const std::size_t nodes = F.grid.nodes();
    const double inv = 1.0 / static_cast<double>(nodes);
    VectorField3 f(F.grid);
    std::vector<std::complex<double>> scratch(nodes);
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < nodes; ++i) scratch[i] = F.coeff[3 * i + c];
        fft2(scratch.data(), n, false);
        for (std::size_t i = 0; i < nodes; ++i) f.values[3 * i + c] = scratch[i].real() * inv;
    }
    return f;
}

double inverse_imag_max(const SpectralField& F) {
    const int n = F.grid.n_side;
    const std::size_t nodes = F.grid.nodes();
    const double inv = 1.0 / static_cast<double>(nodes);
    double m = 0.0;
    std::vector<std::complex<double>> scratch(nodes);
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < nodes; ++i) scratch[i] = F.coeff[3 * i + c];
        fft2(scratch.data(), n, false);
        for (std::size_t i = 0; i < nodes; ++i) m = std::max(m, std::abs(scratch[i].imag() * inv));
    }
    return m;
}

std::vector<std::complex<double>> forward_transform_scalar(const ScalarField& f) {
    const std::size_t nodes = f.grid.nodes();
    std::vector<std::complex<double>> out(nodes);
    for (std::size_t i = 0; i < nodes; ++i) out[i] = f.values[i];
    fft2(out.data(), f.grid.n_side, true);
    return out;
}

VectorField3 spectral_derivative(const VectorField3& f, int axis) {
    if (axis != 1 && axis != 2)
        throw std::invalid_argument("spectral_derivative: axis must be 1 or 2");
    SpectralField F = forward_transform(f);
    apply_multiplier(F, [axis](double kx, double ky, double, std::complex<double>* v) {
        const std::complex<double> ik(0.0, axis == 1 ? kx : ky);
        v[0] *= ik;
        v[1] *= ik;
        v[2] *= ik;
    });
    return inverse_transform(F);
}

VectorCalculus vector_calculus(const VectorField3& f) {
    SpectralField F = forward_transform(f);
    VectorCalculus out;

    SpectralField G1 = F, G2 = F, Lap = F, Gd = F, Cc = F;
    apply_multiplier(G1, [](double kx, double, double, std::complex<double>* v) {
        const std::complex<double> ik(0.0, kx);
        v[0] *= ik; v[1] *= ik; v[2] *= ik;
    });
    apply_multiplier(G2, [](double, double ky, double, std::complex<double>* v) {
        const std::complex<double> ik(0.0, ky);
        v[0] *= ik; v[1] *= ik; v[2] *= ik;
    });
    apply_multiplier(Lap, [](double kx, double ky, double, std::complex<double>* v) {
        const double m = -(kx * kx + ky * ky);
        v[0] *= m; v[1] *= m; v[2] *= m;
    });
    // grad div: component i gets -k_i (k . F), planar k = (kx, ky, 0)
    apply_multiplier(Gd, [](double kx, double ky, double, std::complex<double>* v) {
        const std::complex<double> kdotf = kx * v[0] + ky * v[1];
        v[0] = -kx * kdotf;
        v[1] = -ky * kdotf;
        v[2] = 0.0;
    });
    // curl curl = |k|^2 F - k (k . F)
    apply_multiplier(Cc, [](double kx, double ky, double, std::complex<double>* v) {
        const double k2 = kx * kx + ky * ky;
        const std::complex<double> kdotf = kx * v[0] + ky * v[1];
        v[0] = k2 * v[0] - kx * kdotf;
        v[1] = k2 * v[1] - ky * kdotf;
        v[2] = k2 * v[2];
    });

    out.grad1 = inverse_transform(G1);
    out.grad2 = inverse_transform(G2);
    out.laplacian = inverse_transform(Lap);
    out.grad_div = inverse_transform(Gd);
    out.curl_curl = inverse_transform(Cc);

    const std::size_t nodes = f.grid.nodes();
    out.divergence = ScalarField(f.grid);
    out.curl = VectorField3(f.grid);
    for (std::size_t i = 0; i < nodes; ++i) {
        const double* g1 = out.grad1.node(i);
        const double* g2 = out.grad2.node(i);
        out.divergence.values[i] = g1[0] + g2[1];
        double* c = out.curl.node(i);
        c[0] = g2[2];
        c[1] = -g1[2];
        c[2] = g1[1] - g2[0];
    }
    return out;
}

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double lowpass_profile(double rho) {
    return smooth_step(2.0 - rho);
}

VectorField3 low_pass_filter(const VectorField3& f, double cutoff) {
    if (!(cutoff > 0.0))
        throw std::invalid_argument("low_pass_filter: cutoff must be positive");
    SpectralField F = forward_transform(f);
    apply_multiplier(F, [cutoff](double, double, double kr, std::complex<double>* v) {
        const double w = lowpass_profile(kr / cutoff);
        v[0] *= w; v[1] *= w; v[2] *= w;
    });
    return inverse_transform(F);
}

double spectral_l2_norm_sq(const SpectralField& F) {
    double s = 0.0;
    for (const auto& z : F.coeff) s += std::norm(z);
    return s * F.grid.cell_area() / static_cast<double>(F.grid.nodes());
}

} // namespace ollg
