#include <cmath>
#include <vector>

#include "ollg/oseen_frank.hpp"

namespace ollg {

namespace {

// 1-D kernel of the spectral d/dx1 applied to a one-node bump:
// d[j] = (1/N) sum_m i k_m exp(2 pi i m j / N), real, d[0] = 0.
// The 2-D derivative-of-delta factorizes as D_1(y) = d(y1) delta(y2),
// so a one-node perturbation touches gradients only on the row and column
// through the node.
std::vector<double> delta_derivative_kernel(const GridSpec& g) {
    const int n = g.n_side;
    std::vector<double> d(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int m = 1; m < n / 2; ++m) {
            const double k = 2.0 * M_PI / g.length * m;
            s -= 2.0 * k * std::sin(2.0 * M_PI * m * j / n);
        }
        d[j] = s / n;
    }
    return d;
}

struct NodeState {
    double n[3];
    double g1[3], g2[3];
    double c[3];      // curl
    double nc;        // n . curl
    double nxc[3];    // n x curl
    double div;
};

// Exact difference W(n, p + u (x) e_l) - W(n, p - u (x) e_l) for the
// gradient-row perturbation (u1, u2) of component l; W is quadratic in p at
// fixed n, so this is 4 * <dW/dp, u>.
inline double p_direction_diff(const NodeState& s, int l, double u1, double u2,
                               const FrankConstants& K) {
    const double u_div = (l == 0) ? u1 : (l == 1) ? u2 : 0.0;
    double uc0 = 0.0, uc1 = 0.0, uc2 = 0.0;
    if (l == 2) {
        uc0 = u2;
        uc1 = -u1;
    } else if (l == 1) {
        uc2 = u1;
    } else {
        uc2 = -u2;
    }
    // n x u_c paired against n x c
    const double nxu0 = s.n[1] * uc2 - s.n[2] * uc1;
    const double nxu1 = s.n[2] * uc0 - s.n[0] * uc2;
    const double nxu2 = s.n[0] * uc1 - s.n[1] * uc0;
    const double pair_k2 = s.nxc[0] * nxu0 + s.nxc[1] * nxu1 + s.nxc[2] * nxu2;
    const double n_uc = s.n[0] * uc0 + s.n[1] * uc1 + s.n[2] * uc2;
    double tr_pair = 0.0;
    if (l == 0)
        tr_pair = s.g1[0] * u1 + s.g1[1] * u2;
    else if (l == 1)
        tr_pair = s.g2[0] * u1 + s.g2[1] * u2;
    return 4.0 * (K.k1 * s.div * u_div + K.k2 * pair_k2 + K.k3 * s.nc * n_uc +
                  (K.k2 + K.k4) * (tr_pair - s.div * u_div));
}

// Exact difference W(n + step e_l, p) - W(n - step e_l, p) at the bumped
// node itself (its own gradient is untouched because the kernel vanishes at
// offset zero).
inline double n_direction_diff(const NodeState& s, int l, double step, const FrankConstants& K) {
    double el_x_c[3];
    if (l == 0) {
        el_x_c[0] = 0.0;
        el_x_c[1] = -s.c[2];
        el_x_c[2] = s.c[1];
    } else if (l == 1) {
        el_x_c[0] = s.c[2];
        el_x_c[1] = 0.0;
        el_x_c[2] = -s.c[0];
    } else {
        el_x_c[0] = -s.c[1];
        el_x_c[1] = s.c[0];
        el_x_c[2] = 0.0;
    }
    const double pair_k2 =
        s.nxc[0] * el_x_c[0] + s.nxc[1] * el_x_c[1] + s.nxc[2] * el_x_c[2];
    return 4.0 * step * (K.k2 * pair_k2 + K.k3 * s.nc * s.c[l]);
}

} // namespace

VectorField3 variational_oracle(const DirectorField& n, const FrankConstants& K, double step) {
    if (!(step >= 1e-8 && step <= 1e-4))
        throw std::invalid_argument("variational_oracle: step must lie in [1e-8, 1e-4]");
    const VectorField3& nf = n.field();
    const GridSpec& grid = nf.grid;
    const int N = grid.n_side;
    const std::vector<double> ker = delta_derivative_kernel(grid);

    const VectorField3 g1 = spectral_derivative(nf, 1);
    const VectorField3 g2 = spectral_derivative(nf, 2);
    std::vector<NodeState> st(grid.nodes());
    for (std::size_t i = 0; i < grid.nodes(); ++i) {
        NodeState& s = st[i];
        for (int c = 0; c < 3; ++c) {
            s.n[c] = nf.node(i)[c];
            s.g1[c] = g1.node(i)[c];
            s.g2[c] = g2.node(i)[c];
        }
        s.c[0] = s.g2[2];
        s.c[1] = -s.g1[2];
        s.c[2] = s.g1[1] - s.g2[0];
        s.div = s.g1[0] + s.g2[1];
        s.nc = s.n[0] * s.c[0] + s.n[1] * s.c[1] + s.n[2] * s.c[2];
        s.nxc[0] = s.n[1] * s.c[2] - s.n[2] * s.c[1];
        s.nxc[1] = s.n[2] * s.c[0] - s.n[0] * s.c[2];
        s.nxc[2] = s.n[0] * s.c[1] - s.n[1] * s.c[0];
    }

    VectorField3 out(grid);
    for (int xi = 0; xi < N; ++xi) {
        for (int xj = 0; xj < N; ++xj) {
            for (int l = 0; l < 3; ++l) {
                double diff = 0.0;
                // column through x: d/dx1 row kernel
                for (int y1 = 0; y1 < N; ++y1) {
                    const double u1 = step * ker[(y1 - xi + N) % N];
                    if (u1 != 0.0)
                        diff += p_direction_diff(st[static_cast<std::size_t>(y1) * N + xj], l,
                                                 u1, 0.0, K);
                }
                // row through x: d/dx2 kernel
                const std::size_t row = static_cast<std::size_t>(xi) * N;
                for (int y2 = 0; y2 < N; ++y2) {
                    const double u2 = step * ker[(y2 - xj + N) % N];
                    if (u2 != 0.0)
                        diff += p_direction_diff(st[row + y2], l, 0.0, u2, K);
                }
                diff += n_direction_diff(st[row + xj], l, step, K);
                out.comp(xi, xj, l) = -diff / (2.0 * step);
            }
        }
    }
    return out;
}

VectorField3 variational_oracle_naive(const DirectorField& n, const FrankConstants& K,
                                      double step) {
    if (!(step >= 1e-8 && step <= 1e-4))
        throw std::invalid_argument("variational_oracle: step must lie in [1e-8, 1e-4]");
    const VectorField3& nf = n.field();
    const GridSpec& grid = nf.grid;
    const double da = grid.cell_area();
    VectorField3 out(grid);
    VectorField3 work = nf;
    for (int i = 0; i < grid.n_side; ++i)
        for (int j = 0; j < grid.n_side; ++j)
            for (int l = 0; l < 3; ++l) {
                const double orig = work.comp(i, j, l);
                work.comp(i, j, l) = orig + step;
                const double ep = total_energy_raw(work, K).total;
                work.comp(i, j, l) = orig - step;
                const double em = total_energy_raw(work, K).total;
                work.comp(i, j, l) = orig;
                out.comp(i, j, l) = -(ep - em) / (2.0 * step * da);
            }
    return out;
}

} // namespace ollg
