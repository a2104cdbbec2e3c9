#include "ollg/dynamics.hpp"

#include <cmath>

namespace ollg {

double SolverConfig::cfl_dt(const GridSpec& grid, const FrankConstants& K, double cfl_safety) {
    const double dx = grid.spacing();
    return cfl_safety * dx * dx / (2.0 * K.a() * M_PI * M_PI * 4.0);
}

SolverConfig SolverConfig::make(double dt, double t_end, Scheme scheme, int renormalize_every,
                                std::optional<double> friedrich_cutoff, double cfl_safety,
                                int output_stride, const GridSpec& grid, const FrankConstants& K,
                                bool projected_form) {
    if (!(t_end > 0.0)) throw std::invalid_argument("SolverConfig: t_end must be positive");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
        throw std::invalid_argument("SolverConfig: cfl_safety must lie in (0, 1]");
    if (renormalize_every < 0)
        throw std::invalid_argument("SolverConfig: renormalize_every must be >= 0");
    if (output_stride < 1)
        throw std::invalid_argument("SolverConfig: output_stride must be >= 1");
    if (friedrich_cutoff && !(*friedrich_cutoff > 0.0))
        throw std::invalid_argument("SolverConfig: friedrich_cutoff must be positive");

    const double bound = cfl_dt(grid, K, cfl_safety);
    if (dt <= 0.0) dt = bound;
    if (dt > bound * (1.0 + 1e-12))
        throw std::invalid_argument("SolverConfig: dt exceeds the CFL bound " +
                                    std::to_string(bound));
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.scheme = scheme;
    cfg.renormalize_every = renormalize_every;
    cfg.friedrich_cutoff = friedrich_cutoff;
    cfg.cfl_safety = cfl_safety;
    cfg.output_stride = output_stride;
    cfg.projected_form = projected_form;
    return cfg;
}

VectorField3 rhs_raw(const VectorField3& n, const FrankConstants& K, const GilbertParams& g) {
    const VectorField3 h = molecular_field_raw(n, K);
    VectorField3 out(n.grid);
    const std::size_t nodes = n.grid.nodes();
    for (std::size_t i = 0; i < nodes; ++i) {
        const double* nv = n.node(i);
        const double* hv = h.node(i);
        double hxn[3] = {hv[1] * nv[2] - hv[2] * nv[1], hv[2] * nv[0] - hv[0] * nv[2],
                         hv[0] * nv[1] - hv[1] * nv[0]};
        double nxh[3] = {-hxn[0], -hxn[1], -hxn[2]};
        double* o = out.node(i);
        o[0] = g.alpha * (nv[1] * hxn[2] - nv[2] * hxn[1]) + g.beta * nxh[0];
        o[1] = g.alpha * (nv[2] * hxn[0] - nv[0] * hxn[2]) + g.beta * nxh[1];
        o[2] = g.alpha * (nv[0] * hxn[1] - nv[1] * hxn[0]) + g.beta * nxh[2];
    }
    return out;
}

VectorField3 rhs(const DirectorField& n, const FrankConstants& K, const GilbertParams& g) {
    return rhs_raw(n.field(), K, g);
}

namespace {

// alpha n x (h x n) + beta n x ((n x h) x n), evaluated pointwise.
void projected_combine(const VectorField3& n, const VectorField3& h, const GilbertParams& g,
                       VectorField3& out) {
    const std::size_t nodes = n.grid.nodes();
    for (std::size_t i = 0; i < nodes; ++i) {
        const double* nv = n.node(i);
        const double* hv = h.node(i);
        const double hxn[3] = {hv[1] * nv[2] - hv[2] * nv[1], hv[2] * nv[0] - hv[0] * nv[2],
                               hv[0] * nv[1] - hv[1] * nv[0]};
        const double nxh[3] = {-hxn[0], -hxn[1], -hxn[2]};
        const double nxh_x_n[3] = {nxh[1] * nv[2] - nxh[2] * nv[1],
                                   nxh[2] * nv[0] - nxh[0] * nv[2],
                                   nxh[0] * nv[1] - nxh[1] * nv[0]};
        double* o = out.node(i);
        o[0] = g.alpha * (nv[1] * hxn[2] - nv[2] * hxn[1]) +
               g.beta * (nv[1] * nxh_x_n[2] - nv[2] * nxh_x_n[1]);
        o[1] = g.alpha * (nv[2] * hxn[0] - nv[0] * hxn[2]) +
               g.beta * (nv[2] * nxh_x_n[0] - nv[0] * nxh_x_n[2]);
        o[2] = g.alpha * (nv[0] * hxn[1] - nv[1] * hxn[0]) +
               g.beta * (nv[0] * nxh_x_n[1] - nv[1] * nxh_x_n[0]);
    }
}

} // namespace

VectorField3 rhs_projected(const VectorField3& n, const FrankConstants& K,
                           const GilbertParams& g) {
    const VectorField3 h = molecular_field_raw(n, K);
    VectorField3 out(n.grid);
    projected_combine(n, h, g, out);
    return out;
}

VectorField3 rhs_friedrich(const VectorField3& n, const FrankConstants& K, const GilbertParams& g,
                           double cutoff) {
    if (!(cutoff > 0.0)) throw std::invalid_argument("rhs_friedrich: cutoff must be positive");
    const VectorField3 jn = low_pass_filter(n, cutoff);
    const VectorField3 h = molecular_field_raw(jn, K);
    VectorField3 inner(n.grid);
    projected_combine(jn, h, g, inner);
    return low_pass_filter(inner, cutoff);
}

namespace {

struct RhsOp {
    const SolverConfig& cfg;
    const FrankConstants& K;
    const GilbertParams& g;

    VectorField3 operator()(const VectorField3& n) const {
        if (cfg.friedrich_cutoff) return rhs_friedrich(n, K, g, *cfg.friedrich_cutoff);
        if (cfg.projected_form) return rhs_projected(n, K, g);
        return rhs_raw(n, K, g);
    }
};

// Returns the successor field and exposes the first stage (dn/dt at t).
VectorField3 advance(const VectorField3& n, double dt, const RhsOp& f, Scheme scheme,
                     VectorField3& stage1) {
    stage1 = f(n);
    if (scheme == Scheme::heun) {
        VectorField3 pred = n;
        axpy(dt, stage1, pred);
        const VectorField3 k2 = f(pred);
        VectorField3 out = n;
        axpy(0.5 * dt, stage1, out);
        axpy(0.5 * dt, k2, out);
        return out;
    }
    VectorField3 tmp = n;
    axpy(0.5 * dt, stage1, tmp);
    const VectorField3 k2 = f(tmp);
    tmp = n;
    axpy(0.5 * dt, k2, tmp);
    const VectorField3 k3 = f(tmp);
    tmp = n;
    axpy(dt, k3, tmp);
    const VectorField3 k4 = f(tmp);
    VectorField3 out = n;
    axpy(dt / 6.0, stage1, out);
    axpy(dt / 3.0, k2, out);
    axpy(dt / 3.0, k3, out);
    axpy(dt / 6.0, k4, out);
    return out;
}

// Blow-up screen: any non-finite entry or node shorter than 1/2.
bool state_sane(const VectorField3& n, std::string& reason) {
    const std::size_t nodes = n.grid.nodes();
    for (std::size_t i = 0; i < nodes; ++i) {
        const double* p = n.node(i);
        const double m2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        if (!std::isfinite(m2)) {
            reason = "non-finite value";
            return false;
        }
        if (m2 < 0.25) {
            reason = "|n| < 0.5";
            return false;
        }
    }
    return true;
}

void renormalize_inplace(VectorField3& n) {
    const std::size_t nodes = n.grid.nodes();
    for (std::size_t i = 0; i < nodes; ++i) {
        double* p = n.node(i);
        const double inv = 1.0 / std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        p[0] *= inv;
        p[1] *= inv;
        p[2] *= inv;
    }
}

} // namespace

VectorField3 eval_rhs(const VectorField3& n, const SolverConfig& cfg, const FrankConstants& K,
                      const GilbertParams& g) {
    return RhsOp{cfg, K, g}(n);
}

SimState step(SimState& state, const SolverConfig& cfg, const FrankConstants& K,
              const GilbertParams& g) {
    const RhsOp f{cfg, K, g};
    SimState next;
    next.step_index = state.step_index + 1;
    next.time = next.step_index * cfg.dt;
    next.n = advance(state.n, cfg.dt, f, cfg.scheme, state.last_rhs);
    // Mollified runs evolve freely; renormalization applies only without a cutoff.
    if (!cfg.friedrich_cutoff && cfg.renormalize_every > 0 &&
        next.step_index % cfg.renormalize_every == 0) {
        std::string reason;
        if (state_sane(next.n, reason)) renormalize_inplace(next.n);
    }
    return next;
}

Trajectory run_from(SimState start, double dissipation0, const SolverConfig& cfg,
                    const FrankConstants& K, const GilbertParams& g, const Monitor& monitor,
                    bool keep_states) {
    const RhsOp f{cfg, K, g};
    Trajectory traj;
    const long last_step = static_cast<long>(std::floor(cfg.t_end / cfg.dt + 1e-9));
    const long n_steps = last_step - start.step_index;

    SimState cur = std::move(start);

    double dissipation = dissipation0;
    double prev_d = -1.0;  // ||dn/dt||^2 at the previous step, <0 = not yet set

    auto emit = [&](const SimState& s, bool flagged_state) {
        if (!keep_states) {
            traj.states.clear();
            traj.dissipation_at_state.clear();
        }
        traj.states.push_back(s);
        traj.dissipation_at_state.push_back(dissipation);
        if (monitor) monitor(s, dissipation, flagged_state);
    };

    for (long i = 0; i < n_steps; ++i) {
        SimState next;
        next.step_index = cur.step_index + 1;
        next.time = next.step_index * cfg.dt;
        next.n = advance(cur.n, cfg.dt, f, cfg.scheme, cur.last_rhs);

        const double d_cur = cur.last_rhs.l2_norm_sq();
        if (prev_d >= 0.0) dissipation += g.alpha * 0.5 * cfg.dt * (prev_d + d_cur);
        prev_d = d_cur;

        std::string reason;
        const bool sane = state_sane(next.n, reason);
        if (cur.step_index % cfg.output_stride == 0 || !sane) emit(cur, !sane);
        if (!sane) {
            // Final record is the last good state, marked flagged.
            traj.flagged = true;
            traj.flag_time = next.time;
            traj.flag_step = next.step_index;
            traj.flag_reason = reason;
            return traj;
        }

        if (!cfg.friedrich_cutoff && cfg.renormalize_every > 0 &&
            next.step_index % cfg.renormalize_every == 0)
            renormalize_inplace(next.n);
        cur = std::move(next);
    }

    // dn/dt at the final state, dissipation trapezoid up to t_end
    cur.last_rhs = f(cur.n);
    if (prev_d >= 0.0) dissipation += g.alpha * 0.5 * cfg.dt * (prev_d + cur.last_rhs.l2_norm_sq());
    emit(cur, false);
    return traj;
}

Trajectory run(const DirectorField& initial, const SolverConfig& cfg, const FrankConstants& K,
               const GilbertParams& g, const Monitor& monitor, bool keep_states) {
    SimState start;
    start.time = 0.0;
    start.step_index = 0;
    start.n = initial.field();
    return run_from(std::move(start), 0.0, cfg, K, g, monitor, keep_states);
}

} // namespace ollg
