#include "ollg/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "ollg/spectral.hpp"

namespace ollg {

InstantMetrics instant_metrics(const VectorField3& n, const FrankConstants& K) {
    const SpectralField F = forward_transform(n);

    // H^2 seminorm on the spectral side: sum |k|^4 |F|^2 (all second
    // derivatives, since sum_{ij} k_i^2 k_j^2 = |k|^4).
    double h2 = 0.0;
    {
        const int N = n.grid.n_side;
        for (int m1 = 0; m1 < N; ++m1) {
            const double kx = n.grid.wavenumber_deriv(m1);
            for (int m2 = 0; m2 < N; ++m2) {
                const double ky = n.grid.wavenumber_deriv(m2);
                const double k4 = (kx * kx + ky * ky) * (kx * kx + ky * ky);
                const std::complex<double>* v = &F.coeff[3 * (static_cast<std::size_t>(m1) * N + m2)];
                h2 += k4 * (std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
            }
        }
        h2 *= n.grid.cell_area() / static_cast<double>(n.grid.nodes());
    }

    SpectralField G1 = F, G2 = F;
    apply_multiplier(G1, [](double kx, double, double, std::complex<double>* v) {
        const std::complex<double> ik(0.0, kx);
        v[0] *= ik; v[1] *= ik; v[2] *= ik;
    });
    apply_multiplier(G2, [](double, double ky, double, std::complex<double>* v) {
        const std::complex<double> ik(0.0, ky);
        v[0] *= ik; v[1] *= ik; v[2] *= ik;
    });
    const VectorField3 g1 = inverse_transform(G1);
    const VectorField3 g2 = inverse_transform(G2);

    InstantMetrics m;
    m.H2_norm_sq = h2;
    m.grad_sq = ScalarField(n.grid);
    const std::size_t nodes = n.grid.nodes();
    double splay = 0.0, twist = 0.0, bend = 0.0, nullterm = 0.0, grad2_tot = 0.0, l4 = 0.0;
    double sup = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
        const double* nv = n.node(i);
        const double* a1 = g1.node(i);
        const double* a2 = g2.node(i);
        const double c0 = a2[2], c1 = -a1[2], c2 = a1[1] - a2[0];
        const double div = a1[0] + a2[1];
        const double nc = nv[0] * c0 + nv[1] * c1 + nv[2] * c2;
        const double x0 = nv[1] * c2 - nv[2] * c1;
        const double x1 = nv[2] * c0 - nv[0] * c2;
        const double x2 = nv[0] * c1 - nv[1] * c0;
        const double tr2 = a1[0] * a1[0] + 2.0 * a1[1] * a2[0] + a2[1] * a2[1];
        double grad2 = 0.0;
        for (int c = 0; c < 3; ++c) grad2 += a1[c] * a1[c] + a2[c] * a2[c];
        splay += div * div;
        twist += x0 * x0 + x1 * x1 + x2 * x2;
        bend += nc * nc;
        nullterm += tr2 - div * div;
        grad2_tot += grad2;
        l4 += grad2 * grad2;
        m.grad_sq.values[i] = grad2;
        sup = std::max(sup, grad2);
    }
    const double da = n.grid.cell_area();
    const double a = K.a();
    m.breakdown.splay = K.k1 * splay * da;
    m.breakdown.twist = K.k2 * twist * da;
    m.breakdown.bend = K.k3 * bend * da;
    m.breakdown.null_lagrangian = (K.k2 + K.k4) * nullterm * da;
    m.breakdown.total = m.breakdown.splay + m.breakdown.twist + m.breakdown.bend +
                        m.breakdown.null_lagrangian;
    m.breakdown.grad_l2_sq = grad2_tot * da;
    m.breakdown.dirichlet_part = a * m.breakdown.grad_l2_sq;
    m.breakdown.v_part = ((K.k1 - a) * splay + (K.k2 - a) * twist + (K.k3 - a) * bend) * da;
    m.grad_sup = std::sqrt(sup);
    m.L4_grad = l4 * da;
    return m;
}

LocalEnergyMap local_energy_map(const ScalarField& grad_sq, double R, int stride) {
    const GridSpec& g = grad_sq.grid;
    const double dx = g.spacing();
    if (!(R >= 2.0 * dx && R <= g.length / 4.0))
        throw std::invalid_argument("local_energy_map: need 2 dx <= R <= L/4");
    if (stride < 1) throw std::invalid_argument("local_energy_map: stride must be >= 1");

    const int N = g.n_side;
    // Disk offsets under the torus metric, shared by every center.
    std::vector<std::pair<int, int>> offsets;
    const int reach = static_cast<int>(std::floor(R / dx)) + 1;
    for (int di = -reach; di <= reach; ++di)
        for (int dj = -reach; dj <= reach; ++dj) {
            const double d2 = (di * dx) * (di * dx) + (dj * dx) * (dj * dx);
            if (d2 <= R * R) offsets.emplace_back(di, dj);
        }

    LocalEnergyMap map;
    map.radius = R;
    map.stride = stride;
    map.centers_per_axis = (N + stride - 1) / stride;
    map.values.assign(static_cast<std::size_t>(map.centers_per_axis) * map.centers_per_axis, 0.0);
    map.max_value = -1.0;
    for (int ci = 0; ci < map.centers_per_axis; ++ci) {
        const int i0 = ci * stride;
        for (int cj = 0; cj < map.centers_per_axis; ++cj) {
            const int j0 = cj * stride;
            double s = 0.0;
            for (const auto& [di, dj] : offsets) {
                const int i = (i0 + di + N) % N;
                const int j = (j0 + dj + N) % N;
                s += grad_sq.values[static_cast<std::size_t>(i) * N + j];
            }
            s *= g.cell_area();
            map.values[static_cast<std::size_t>(ci) * map.centers_per_axis + cj] = s;
            if (s > map.max_value) {
                map.max_value = s;
                map.argmax_x = i0 * dx;
                map.argmax_y = j0 * dx;
            }
        }
    }
    return map;
}

LocalEnergyMap local_energy_map(const VectorField3& n, double R, int stride) {
    const VectorField3 g1 = spectral_derivative(n, 1);
    const VectorField3 g2 = spectral_derivative(n, 2);
    ScalarField gsq(n.grid);
    for (std::size_t i = 0; i < n.grid.nodes(); ++i) {
        const double* a1 = g1.node(i);
        const double* a2 = g2.node(i);
        double s = 0.0;
        for (int c = 0; c < 3; ++c) s += a1[c] * a1[c] + a2[c] * a2[c];
        gsq.values[i] = s;
    }
    return local_energy_map(gsq, R, stride);
}

// ---- Fornberg finite-difference weights (first derivative) ----

namespace {

// Weights w so that sum w[j] y(x[j]) approximates y'(x0); exact for
// polynomials of degree < n.
void fornberg_first_derivative(const double* x, int n, double x0, double* w) {
    std::vector<double> c(static_cast<std::size_t>(n) * 2, 0.0);
    auto C = [&](int i, int m) -> double& { return c[static_cast<std::size_t>(i) * 2 + m]; };
    double c1 = 1.0;
    double c4 = x[0] - x0;
    C(0, 0) = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, 1);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int m = mn; m >= 1; --m)
                    C(i, m) = c1 * (m * C(i - 1, m - 1) - c5 * C(i - 1, m)) / c2;
                C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
            }
            for (int m = mn; m >= 1; --m) C(j, m) = (c4 * C(j, m) - m * C(j, m - 1)) / c3;
            C(j, 0) = c4 * C(j, 0) / c3;
        }
        c1 = c2;
    }
    for (int i = 0; i < n; ++i) w[i] = C(i, 1);
}

} // namespace

double series_derivative(const std::vector<double>& t, const std::vector<double>& y,
                         std::size_t i) {
    const std::size_t n = t.size();
    if (n < 2) return 0.0;
    const std::size_t width = std::min<std::size_t>(n, 5);
    std::size_t lo = (i >= 2) ? i - 2 : 0;
    if (lo + width > n) lo = n - width;
    // 4-point one-sided stencils at the boundary keep the residual third
    // order there (interior is fourth order).
    std::size_t w = width;
    if (width == 5 && (i < 2 || i + 2 >= n)) {
        w = 4;
        lo = (i < 2) ? 0 : n - 4;
    }
    double wts[5];
    fornberg_first_derivative(t.data() + lo, static_cast<int>(w), t[i], wts);
    double d = 0.0;
    for (std::size_t j = 0; j < w; ++j) d += wts[j] * y[lo + j];
    return d;
}

void apply_energy_residuals(std::vector<EnergyRecord>& records, double alpha) {
    const std::size_t n = records.size();
    std::vector<double> t(n), e_plus_d(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = records[i].t;
        e_plus_d[i] = records[i].E_total + records[i].dissipation_cum;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (records[i].flags != 0) {
            records[i].identity_residual_energy = 0.0;  // unset on flagged rows
            continue;
        }
        records[i].identity_residual_energy = alpha * std::abs(series_derivative(t, e_plus_d, i));
    }
}

RecordBuilder::RecordBuilder(const FrankConstants& K, const GilbertParams& g,
                             const DiagnosticsParams& p)
    : K_(K), g_(g), p_(p) {}

void RecordBuilder::seed_previous(double t_prev, double grad_sup_prev, double blowup_prev) {
    seed_t_ = t_prev;
    seed_grad_sup_ = grad_sup_prev;
    seed_blowup_ = blowup_prev;
    seeded_ = true;
}

void RecordBuilder::add(const SimState& s, double dissipation_cum, bool flagged) {
    const InstantMetrics m = instant_metrics(s.n, K_);
    EnergyRecord r;
    r.t = s.time;
    r.breakdown = m.breakdown;
    r.E_total = m.breakdown.total;
    r.dissipation_cum = dissipation_cum;
    r.grad_sup = m.grad_sup;
    r.H2_norm_sq = m.H2_norm_sq;
    r.L4_grad = m.L4_grad;
    r.flags = flagged ? 1 : 0;

    // beta identity, instantaneous
    if (flagged) {
        r.identity_residual_beta = 0.0;
    } else {
        const VectorField3 h = molecular_field_raw(s.n, K_);
        const VectorField3 nxh = cross(s.n, h);
        double ip = 0.0, dn2 = 0.0;
        for (std::size_t i = 0; i < s.n.values.size(); ++i) {
            ip += s.last_rhs.values[i] * nxh.values[i];
            dn2 += s.last_rhs.values[i] * s.last_rhs.values[i];
        }
        ip *= s.n.grid.cell_area();
        dn2 *= s.n.grid.cell_area();
        r.identity_residual_beta = std::abs(ip - g_.beta * dn2) / std::max(dn2, 1e-12);
    }

    // blow-up integral: trapezoid of grad_sup^2 over output times
    if (!records_.empty()) {
        const EnergyRecord& prev = records_.back();
        r.blowup_integral = prev.blowup_integral +
                            0.5 * (r.t - prev.t) *
                                (prev.grad_sup * prev.grad_sup + r.grad_sup * r.grad_sup);
    } else if (seeded_) {
        r.blowup_integral = seed_blowup_ + 0.5 * (r.t - seed_t_) *
                                               (seed_grad_sup_ * seed_grad_sup_ +
                                                r.grad_sup * r.grad_sup);
    }

    // local disk maps at the diagnostics radius and the monotonicity radius
    const LocalEnergyMap map_r = local_energy_map(m.grad_sq, p_.R, p_.map_stride);
    r.local_max = map_r.max_value;
    r.local_argmax_x = map_r.argmax_x;
    r.local_argmax_y = map_r.argmax_y;
    maps_R_.push_back(map_r);
    maps_mono_.push_back(local_energy_map(m.grad_sq, p_.monotonicity_radius, p_.map_stride));
    if (records_.empty())
        initial_2r_ = local_energy_map(m.grad_sq, 2.0 * p_.monotonicity_radius, p_.map_stride);

    records_.push_back(std::move(r));
}

void RecordBuilder::finalize() {
    if (finalized_) return;
    apply_energy_residuals(records_, g_.alpha);
    finalized_ = true;
}

EnergyRecord record(const SimState& prev, const SimState& cur, const SimState& next,
                    double dissip_prev, double dissip_cur, double dissip_next,
                    const FrankConstants& K, const GilbertParams& g,
                    const DiagnosticsParams& p) {
    if (!(prev.time < cur.time && cur.time < next.time))
        throw std::invalid_argument("record: states must be at three increasing times");
    RecordBuilder b(K, g, p);
    b.add(prev, dissip_prev, false);
    b.add(cur, dissip_cur, false);
    b.add(next, dissip_next, false);
    b.finalize();
    return b.records()[1];
}

MonotonicityAudit monotonicity_audit(const Trajectory& traj, double R, int stride,
                                     const FrankConstants& K) {
    if (traj.states.size() < 3)
        throw std::invalid_argument("monotonicity_audit: need at least 3 records");
    const double E0 = total_energy_raw(traj.states.front().n, K).total;
    if (E0 <= 0.0) throw std::domain_error("monotonicity_audit: undefined for E0 = 0");

    const LocalEnergyMap initial_2r = local_energy_map(traj.states.front().n, 2.0 * R, stride);
    MonotonicityAudit audit;
    for (std::size_t s = 1; s < traj.states.size(); ++s) {
        const double t = traj.states[s].time;
        if (!(t > 0.0)) continue;
        const LocalEnergyMap map = local_energy_map(traj.states[s].n, R, stride);
        for (std::size_t c = 0; c < map.values.size(); ++c) {
            const double num = map.values[c] - initial_2r.values[c];
            if (num > 0.0) {
                ++audit.positive_numerators;
                audit.C0_empirical = std::max(audit.C0_empirical, num * R * R / (t * E0));
            }
        }
    }
    return audit;
}

double struwe_ratio(const Trajectory& traj, double R, int stride, const FrankConstants& K) {
    const std::size_t n = traj.states.size();
    if (n < 2) throw std::domain_error("struwe_ratio: undefined for a single state");
    std::vector<double> t(n), l4(n), h2(n), g2(n);
    double ess_sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const InstantMetrics m = instant_metrics(traj.states[i].n, K);
        t[i] = traj.states[i].time;
        l4[i] = m.L4_grad;
        h2[i] = m.H2_norm_sq;
        g2[i] = m.breakdown.grad_l2_sq;
        ess_sup = std::max(ess_sup, local_energy_map(m.grad_sq, R, stride).max_value);
    }
    double lhs = 0.0, int_h2 = 0.0, int_g2 = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double dt = t[i] - t[i - 1];
        lhs += 0.5 * dt * (l4[i] + l4[i - 1]);
        int_h2 += 0.5 * dt * (h2[i] + h2[i - 1]);
        int_g2 += 0.5 * dt * (g2[i] + g2[i - 1]);
    }
    const double rhs = ess_sup * (int_h2 + int_g2 / (R * R));
    if (rhs <= 0.0) throw std::domain_error("struwe_ratio: undefined, RHS vanishes");
    return lhs / rhs;
}

std::vector<ConcentrationEvent> concentration_scan(const std::vector<LocalEnergyMap>& maps,
                                                   const std::vector<double>& times,
                                                   double epsilon0, double R) {
    if (!(epsilon0 > 0.0))
        throw std::invalid_argument("concentration_scan: epsilon0 must be positive");
    std::vector<ConcentrationEvent> events;
    bool armed = true;
    for (std::size_t i = 0; i < maps.size() && i < times.size(); ++i) {
        const LocalEnergyMap& m = maps[i];
        if (armed && m.max_value > epsilon0) {
            events.push_back({times[i], m.argmax_x, m.argmax_y, m.max_value, R, epsilon0});
            armed = false;
        } else if (!armed && m.max_value < 0.5 * epsilon0) {
            armed = true;   // hysteresis re-arm
        }
    }
    return events;
}

std::vector<ConcentrationEvent> concentration_scan(const Trajectory& traj, double epsilon0,
                                                   double R, int stride,
                                                   const FrankConstants& K) {
    std::vector<LocalEnergyMap> maps;
    std::vector<double> times;
    maps.reserve(traj.states.size());
    for (const SimState& s : traj.states) {
        const InstantMetrics m = instant_metrics(s.n, K);
        maps.push_back(local_energy_map(m.grad_sq, R, stride));
        times.push_back(s.time);
    }
    return concentration_scan(maps, times, epsilon0, R);
}

double hbar(const VectorField3& n1, const VectorField3& n2, const VectorField3& dn1,
            const VectorField3& dn2, const FrankConstants& K) {
    require_same_grid(n1.grid, n2.grid, "hbar");
    require_same_grid(n1.grid, dn1.grid, "hbar");
    require_same_grid(n1.grid, dn2.grid, "hbar");
    const InstantMetrics m1 = instant_metrics(n1, K);
    const InstantMetrics m2 = instant_metrics(n2, K);
    return 1.0 + (m1.L4_grad + m2.L4_grad) + (dn1.l2_norm_sq() + dn2.l2_norm_sq()) +
           (m1.breakdown.grad_l2_sq + m1.H2_norm_sq + m2.breakdown.grad_l2_sq + m2.H2_norm_sq);
}

} // namespace ollg
