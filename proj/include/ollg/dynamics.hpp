#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ollg/oseen_frank.hpp"

namespace ollg {

enum class Scheme { rk4, heun };

struct SolverConfig {
    double dt = 0.0;
    double t_end = 0.0;
    Scheme scheme = Scheme::rk4;
    int renormalize_every = 1;                  // 0 = never
    std::optional<double> friedrich_cutoff;     // absent = unmollified
    double cfl_safety = 0.4;
    int output_stride = 1;
    bool projected_form = false;                // integrate (A.1') instead of (1.4)

    /// Stability bound for the stiffest (2a Lap) term.
    static double cfl_dt(const GridSpec& grid, const FrankConstants& K, double cfl_safety);

    /// Validates all invariants, including dt <= cfl_dt.  dt <= 0 selects the
    /// CFL bound itself.
    static SolverConfig make(double dt, double t_end, Scheme scheme, int renormalize_every,
                             std::optional<double> friedrich_cutoff, double cfl_safety,
                             int output_stride, const GridSpec& grid, const FrankConstants& K,
                             bool projected_form = false);
};

struct SimState {
    double time = 0.0;
    long step_index = 0;
    VectorField3 n;
    VectorField3 last_rhs;   // dn/dt at this state's own time
};

struct Trajectory {
    std::vector<SimState> states;              // at output strides; first = initial datum
    std::vector<double> dissipation_at_state;  // alpha * int ||dt n||_2^2, step-cadence trapezoid
    bool flagged = false;
    double flag_time = 0.0;
    long flag_step = -1;
    std::string flag_reason;
};

/// dn/dt = alpha n x (h x n) + beta n x h  (Eq. form with -alpha n x (n x h)
/// rewritten via the triple product).
VectorField3 rhs(const DirectorField& n, const FrankConstants& K, const GilbertParams& g);
VectorField3 rhs_raw(const VectorField3& n, const FrankConstants& K, const GilbertParams& g);

/// Projected equivalent form dn/dt = alpha n x (h x n) + beta n x ((n x h) x n);
/// agrees with rhs wherever |n| = 1 and needs no unit norm.
VectorField3 rhs_projected(const VectorField3& n, const FrankConstants& K, const GilbertParams& g);

/// Friedrich-mollified right-hand side: every field inside the brackets is
/// J_eps-filtered, h is evaluated at J_eps n, and the result is J_eps-filtered
/// again, so the output is band-limited to 2*cutoff.
VectorField3 rhs_friedrich(const VectorField3& n, const FrankConstants& K, const GilbertParams& g,
                           double cutoff);

/// One explicit step.  Fills state.last_rhs (the first stage is dn/dt at the
/// state's own time) and returns the successor with last_rhs left empty.
SimState step(SimState& state, const SolverConfig& cfg, const FrankConstants& K,
              const GilbertParams& g);

/// dn/dt under the config's active form (friedrich / projected / plain).
VectorField3 eval_rhs(const VectorField3& n, const SolverConfig& cfg, const FrankConstants& K,
                      const GilbertParams& g);

using Monitor = std::function<void(const SimState&, double dissipation_cum, bool flagged)>;

/// Integrates to the largest multiple of dt not exceeding t_end.  Snapshots
/// are retained (and the monitor invoked) at step indices divisible by
/// output_stride, at the final step, and at the last good state if the run
/// flags.  Blow-up (non-finite values or |n| < 0.5) terminates the run with
/// flagged = true rather than throwing.
/// keep_states = false retains only the most recent snapshot in the returned
/// trajectory (streaming callers persist through the monitor instead).
Trajectory run(const DirectorField& initial, const SolverConfig& cfg, const FrankConstants& K,
               const GilbertParams& g, const Monitor& monitor = {}, bool keep_states = true);

/// Continuation entry point: resumes stepping from an arbitrary state with
/// an already-accumulated dissipation integral (restart path).
Trajectory run_from(SimState start, double dissipation0, const SolverConfig& cfg,
                    const FrankConstants& K, const GilbertParams& g, const Monitor& monitor = {},
                    bool keep_states = true);

} // namespace ollg
