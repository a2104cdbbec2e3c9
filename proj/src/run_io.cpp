#include "ollg/run_io.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ollg/littlewood_paley.hpp"
#include "ollg/records_io.hpp"
#include "ollg/snapshot.hpp"
#include "ollg/spectral.hpp"

namespace fs = std::filesystem;

namespace ollg {

namespace {

class LockFile {
public:
    explicit LockFile(const std::string& path) : path_(path) {
        fd_ = ::open(path.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd_ < 0)
            throw std::runtime_error("output directory is locked by another writer: " + path);
    }
    ~LockFile() {
        if (fd_ >= 0) {
            ::close(fd_);
            ::unlink(path_.c_str());
        }
    }
    LockFile(const LockFile&) = delete;
    LockFile& operator=(const LockFile&) = delete;

private:
    std::string path_;
    int fd_ = -1;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
}

void write_manifest(const std::string& dir, const RunConfig& cfg) {
    std::ostringstream o;
    o << "artifact = ollg 0.3.0\n";
    o << "platform = " << (sizeof(void*) == 8 ? "64-bit" : "32-bit")
      << " little-endian, ieee754 doubles\n";
    o << "compiler = " << __VERSION__ << "\n";
    o << "config:\n" << canonical_config_text(cfg);
    write_file(dir + "/manifest.txt", o.str());
}

} // namespace

std::string snapshot_path(const std::string& dir, long record_index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap_%08ld.bin", record_index);
    return dir + "/" + buf;
}

RunSummary perform_run(const RunConfig& cfg, const std::string& out_dir, bool quiet) {
    fs::create_directories(out_dir);
    LockFile lock(out_dir + "/.lock");

    const DirectorField n0 = generate_initial(cfg.initial, cfg.grid);
    RecordBuilder builder(cfg.frank, cfg.gilbert, cfg.diagnostics);
    long record_idx = 0;
    long last_snap_idx = -1;
    const Monitor mon = [&](const SimState& s, double dissip, bool flagged) {
        builder.add(s, dissip, flagged);
        if (record_idx % cfg.output.snapshot_stride == 0) {
            write_snapshot(snapshot_path(out_dir, record_idx), s.n, s.time);
            last_snap_idx = record_idx;
        }
        if (!quiet)
            std::fprintf(stderr, "t=%-12.6g E=%-14.8g%s\n", s.time,
                         builder.records().back().E_total, flagged ? "  [blow-up]" : "");
        ++record_idx;
    };

    const Trajectory traj = run(n0, cfg.solver, cfg.frank, cfg.gilbert, mon, false);
    builder.finalize();
    if (record_idx - 1 != last_snap_idx)   // final record always has a snapshot
        write_snapshot(snapshot_path(out_dir, record_idx - 1), traj.states.back().n,
                       traj.states.back().time);
    write_records_csv(out_dir + "/records.csv", builder.records());
    write_file(out_dir + "/config.echo", canonical_config_text(cfg));
    write_manifest(out_dir, cfg);

    RunSummary s;
    s.flagged = traj.flagged;
    s.n_records = builder.records().size();
    s.final_time = builder.records().back().t;
    s.flag_reason = traj.flag_reason;
    return s;
}

RunSummary perform_restart(const std::string& run_dir, std::optional<double> until, bool quiet) {
    RunConfig cfg = parse_config_text(read_file(run_dir + "/config.echo"), "config.echo");
    if (until) {
        if (!(*until > 0.0)) throw std::invalid_argument("restart: --until must be positive");
        cfg.solver.t_end = *until;
    }
    std::vector<EnergyRecord> prior = read_records_csv(run_dir + "/records.csv");
    if (prior.empty()) throw std::runtime_error("restart: empty records.csv");

    // Latest snapshot on disk anchors the continuation.
    long snap_idx = -1;
    for (const auto& entry : fs::directory_iterator(run_dir)) {
        const std::string name = entry.path().filename().string();
        long idx = -1;
        if (std::sscanf(name.c_str(), "snap_%08ld.bin", &idx) == 1) snap_idx = std::max(snap_idx, idx);
    }
    if (snap_idx < 0 || snap_idx >= static_cast<long>(prior.size()))
        throw std::runtime_error("restart: no usable snapshot in " + run_dir);
    const SnapshotData snap = read_snapshot(snapshot_path(run_dir, snap_idx));

    LockFile lock(run_dir + "/.lock");

    SimState start;
    start.time = snap.time;
    start.step_index = std::llround(snap.time / cfg.solver.dt);
    start.n = snap.n;

    RecordBuilder builder(cfg.frank, cfg.gilbert, cfg.diagnostics);
    if (snap_idx > 0)
        builder.seed_previous(prior[snap_idx - 1].t, prior[snap_idx - 1].grad_sup,
                              prior[snap_idx - 1].blowup_integral);

    long record_idx = snap_idx;
    long last_snap_idx = snap_idx;   // the snapshot we resumed from exists
    const Monitor mon = [&](const SimState& s, double dissip, bool flagged) {
        builder.add(s, dissip, flagged);
        if (record_idx != snap_idx && record_idx % cfg.output.snapshot_stride == 0) {
            write_snapshot(snapshot_path(run_dir, record_idx), s.n, s.time);
            last_snap_idx = record_idx;
        }
        if (!quiet) std::fprintf(stderr, "t=%-12.6g%s\n", s.time, flagged ? "  [blow-up]" : "");
        ++record_idx;
    };

    const Trajectory traj = run_from(std::move(start), prior[snap_idx].dissipation_cum, cfg.solver,
                                     cfg.frank, cfg.gilbert, mon, false);
    if (record_idx - 1 != last_snap_idx)
        write_snapshot(snapshot_path(run_dir, record_idx - 1), traj.states.back().n,
                       traj.states.back().time);

    // Merge: rows before the anchor stay, the continuation re-emits the
    // anchor row (bit-identical) and everything after it.
    std::vector<EnergyRecord> merged(prior.begin(), prior.begin() + snap_idx);
    for (const EnergyRecord& r : builder.records()) merged.push_back(r);
    apply_energy_residuals(merged, cfg.gilbert.alpha);
    write_records_csv(run_dir + "/records.csv", merged);
    write_file(run_dir + "/config.echo", canonical_config_text(cfg));
    write_manifest(run_dir, cfg);

    RunSummary s;
    s.flagged = traj.flagged;
    s.n_records = merged.size();
    s.final_time = merged.back().t;
    s.flag_reason = traj.flag_reason;
    return s;
}

namespace {

std::vector<long> snapshot_indices(const std::string& dir) {
    std::vector<long> idx;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        long i = -1;
        if (std::sscanf(name.c_str(), "snap_%08ld.bin", &i) == 1) idx.push_back(i);
    }
    std::sort(idx.begin(), idx.end());
    return idx;
}

} // namespace

CompareSeries compare_runs(const std::string& dir_a, const std::string& dir_b) {
    const RunConfig ca = parse_config_text(read_file(dir_a + "/config.echo"), "config.echo");
    const RunConfig cb = parse_config_text(read_file(dir_b + "/config.echo"), "config.echo");
    if (!(ca.grid == cb.grid))
        throw std::invalid_argument("compare: run grids do not match");

    const std::vector<long> ia = snapshot_indices(dir_a);
    const std::vector<long> ib = snapshot_indices(dir_b);
    std::vector<long> common;
    std::set_intersection(ia.begin(), ia.end(), ib.begin(), ib.end(), std::back_inserter(common));
    if (common.empty()) throw std::invalid_argument("compare: no matching snapshots");

    const DyadicPartition P = build_partition(ca.grid);
    CompareSeries out;
    for (long idx : common) {
        const SnapshotData sa = read_snapshot(snapshot_path(dir_a, idx));
        const SnapshotData sb = read_snapshot(snapshot_path(dir_b, idx));
        if (std::abs(sa.time - sb.time) > 1e-12 * std::max(1.0, std::abs(sa.time)))
            throw std::invalid_argument("compare: snapshot times diverge at index " +
                                        std::to_string(idx));
        const DirectorField na = DirectorField::checked(sa.n, 1e-6);
        const DirectorField nb = DirectorField::checked(sb.n, 1e-6);
        const WeakMetric Wm =
            weak_metric(na, nb, P, ca.frank, ca.diagnostics.weak_metric_s);
        const VectorField3 da = eval_rhs(sa.n, ca.solver, ca.frank, ca.gilbert);
        const VectorField3 db = eval_rhs(sb.n, cb.solver, cb.frank, cb.gilbert);
        out.t.push_back(sa.time);
        out.W_total.push_back(Wm.total);
        out.hbar_value.push_back(hbar(sa.n, sb.n, da, db, ca.frank));
    }

    // int hbar from the first matched snapshot
    out.hbar_integral.assign(out.t.size(), 0.0);
    for (std::size_t i = 1; i < out.t.size(); ++i)
        out.hbar_integral[i] = out.hbar_integral[i - 1] + 0.5 * (out.t[i] - out.t[i - 1]) *
                                                              (out.hbar_value[i] +
                                                               out.hbar_value[i - 1]);

    out.W0 = out.W_total.front();
    out.fitted_C = 0.0;
    if (out.W0 > 0.0) {
        for (std::size_t i = 1; i < out.t.size(); ++i)
            if (out.W_total[i] > 0.0 && out.hbar_integral[i] > 0.0)
                out.fitted_C = std::max(out.fitted_C, std::log(out.W_total[i] / out.W0) /
                                                          out.hbar_integral[i]);
    }
    out.bound_ratio.assign(out.t.size(), 0.0);
    if (out.W0 > 0.0)
        for (std::size_t i = 0; i < out.t.size(); ++i)
            out.bound_ratio[i] =
                out.W_total[i] / (out.W0 * std::exp(out.fitted_C * out.hbar_integral[i]));
    return out;
}

void write_compare_csv(const std::string& path, const CompareSeries& s) {
    std::ostringstream o;
    o << "t,W_total,hbar,hbar_integral,bound_ratio\n";
    for (std::size_t i = 0; i < s.t.size(); ++i)
        o << format_g17(s.t[i]) << ',' << format_g17(s.W_total[i]) << ','
          << format_g17(s.hbar_value[i]) << ',' << format_g17(s.hbar_integral[i]) << ','
          << format_g17(s.bound_ratio[i]) << "\n";
    write_file(path, o.str());
}

void write_spectrum_csv(const std::string& run_dir, const std::string& out_path) {
    const RunConfig cfg = parse_config_text(read_file(run_dir + "/config.echo"), "config.echo");
    const DyadicPartition P = build_partition(cfg.grid);
    std::ostringstream o;
    o << "t,j,grad_block_energy\n";
    for (long idx : snapshot_indices(run_dir)) {
        const SnapshotData s = read_snapshot(snapshot_path(run_dir, idx));
        const SpectralField F = forward_transform(s.n);
        const int N = cfg.grid.n_side;
        for (int j = -1; j <= P.j_max; ++j) {
            double e = 0.0;
            for (int m1 = 0; m1 < N; ++m1) {
                const double kx = cfg.grid.wavenumber_deriv(m1);
                const double kxf = cfg.grid.wavenumber(m1);
                for (int m2 = 0; m2 < N; ++m2) {
                    const double ky = cfg.grid.wavenumber_deriv(m2);
                    const double kyf = cfg.grid.wavenumber(m2);
                    const double w =
                        P.block_multiplier(j, std::sqrt(kxf * kxf + kyf * kyf));
                    if (w == 0.0) continue;
                    const std::complex<double>* v =
                        &F.coeff[3 * (static_cast<std::size_t>(m1) * N + m2)];
                    e += w * w * (kx * kx + ky * ky) *
                         (std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
                }
            }
            e *= cfg.grid.cell_area() / static_cast<double>(cfg.grid.nodes());
            o << format_g17(s.time) << ',' << j << ',' << format_g17(e) << "\n";
        }
    }
    write_file(out_path, o.str());
}

// ---- check-invariants ----

namespace {

struct Checker {
    std::ostream& out;
    int failures = 0;

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        out << (ok ? "PASS " : "FAIL ") << name;
        if (!ok && !detail.empty()) out << ": " << detail;
        out << "\n";
        if (!ok) ++failures;
    }
};

} // namespace

int check_invariants(std::ostream& out) {
    Checker c{out};
    const GridSpec grid = GridSpec::make(32, 2.0 * M_PI);
    const FrankConstants K = FrankConstants::make(1.0, 2.0, 3.0, 0.5);

    InitialSpec rnd;
    rnd.kind = InitialSpec::Kind::random_smooth;
    rnd.amplitude = 0.4;
    rnd.modes = 3;
    rnd.seed = 99;
    const DirectorField n = generate_initial(rnd, grid);

    {   // Parseval + round trip
        const SpectralField F = forward_transform(n.field());
        const VectorField3 back = inverse_transform(F);
        c.check("transform_roundtrip", max_abs_diff(back, n.field()) < 1e-12);
        const double phys = n.field().l2_norm_sq();
        c.check("parseval", std::abs(phys - spectral_l2_norm_sq(F)) < 1e-12 * phys);
    }
    {   // derivative commutes with the mollifier
        const double cutoff = 0.3 * grid.k_axis_max();
        const VectorField3 a = spectral_derivative(low_pass_filter(n.field(), cutoff), 1);
        const VectorField3 b = low_pass_filter(spectral_derivative(n.field(), 1), cutoff);
        c.check("deriv_commutes_with_mollifier", max_abs_diff(a, b) < 1e-12 * (1.0 + a.max_abs()));
    }
    {   // Lap = grad div - curl curl
        const VectorCalculus vc = vector_calculus(n.field());
        const VectorField3 rhs = lin_comb(1.0, vc.grad_div, -1.0, vc.curl_curl);
        c.check("laplacian_identity", l2_diff(vc.laplacian, rhs) <
                                          1e-10 * std::sqrt(vc.laplacian.l2_norm_sq() + 1e-30));
    }
    {   // normalize is idempotent, bit-exact
        const DirectorField m1 = normalize(n.field());
        const DirectorField m2 = normalize(m1.field());
        c.check("normalize_projection", max_abs_diff(m1.field(), m2.field()) == 0.0);
    }
    {   // unit-field gradient decomposition
        const VectorCalculus vc = vector_calculus(n.field());
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.nodes(); ++i) {
            const double* nv = n.field().node(i);
            const double* g1 = vc.grad1.node(i);
            const double* g2 = vc.grad2.node(i);
            const double* cv = vc.curl.node(i);
            double grad2 = 0.0;
            for (int cc = 0; cc < 3; ++cc) grad2 += g1[cc] * g1[cc] + g2[cc] * g2[cc];
            const double div = vc.divergence.values[i];
            const double nc = nv[0] * cv[0] + nv[1] * cv[1] + nv[2] * cv[2];
            const double x0 = nv[1] * cv[2] - nv[2] * cv[1];
            const double x1 = nv[2] * cv[0] - nv[0] * cv[2];
            const double x2 = nv[0] * cv[1] - nv[1] * cv[0];
            const double tr2 = g1[0] * g1[0] + 2.0 * g1[1] * g2[0] + g2[1] * g2[1];
            const double rhs = div * div + nc * nc + (x0 * x0 + x1 * x1 + x2 * x2) +
                               (tr2 - div * div);
            worst = std::max(worst, std::abs(rhs - grad2) / std::max(1.0, grad2));
        }
        c.check("unit_field_identity", worst < 1e-8);
    }
    {   // classical reduction
        const FrankConstants Kc = FrankConstants::make(1.0, 1.0, 1.0, 0.0);
        const VectorField3 h = molecular_field(n, Kc);
        const VectorCalculus vc = vector_calculus(n.field());
        VectorField3 lap2 = vc.laplacian;
        for (double& v : lap2.values) v *= 2.0;
        c.check("classical_reduction",
                l2_diff(h, lap2) < 1e-10 * std::sqrt(lap2.l2_norm_sq() + 1e-30));
    }
    {   // oracle vs tangential molecular field
        const VectorField3 h = molecular_field(n, K);
        const FieldSplit split = split_field(n, h, K);
        const VectorField3 oracle = variational_oracle(n, K, 1e-6);
        const FieldSplit osplit = split_field(n, oracle, K);
        const double rel = l2_diff(split.tangential, osplit.tangential) /
                           std::sqrt(split.tangential.l2_norm_sq() + 1e-30);
        c.check("oracle_tangential_match", rel < 1e-6,
                "relative deviation " + std::to_string(rel));
    }
    {   // k4 never reaches the dynamics
        const FrankConstants K2 = FrankConstants::make(K.k1, K.k2, K.k3, K.k4 + 2.5);
        const VectorField3 o1 = variational_oracle(n, K, 1e-6);
        const VectorField3 o2 = variational_oracle(n, K2, 1e-6);
        c.check("null_lagrangian_invariance",
                l2_diff(o1, o2) < 1e-8 * std::sqrt(o1.l2_norm_sq() + 1.0));
    }
    {   // Littlewood-Paley partition / reconstruction / almost-orthogonality
        const DyadicPartition P = build_partition(grid);
        double worst = 0.0;
        for (int m1 = 0; m1 < grid.n_side; ++m1)
            for (int m2 = 0; m2 < grid.n_side; ++m2) {
                const double kx = grid.wavenumber(m1), ky = grid.wavenumber(m2);
                const double r = std::sqrt(kx * kx + ky * ky);
                double s = 0.0;
                for (int j = -1; j <= P.j_max; ++j) s += P.block_multiplier(j, r);
                worst = std::max(worst, std::abs(s - 1.0));
            }
        c.check("lp_partition_of_unity", worst <= 1e-10);
        const BlockSet B = decompose(n.field(), P);
        c.check("lp_reconstruction",
                l2_diff(B.reconstruction(), n.field()) <
                    1e-10 * std::sqrt(n.field().l2_norm_sq()));
        const BlockSet B0 = decompose(B.block(0), P);
        double lk = 0.0;
        for (int j = 2; j <= P.j_max; ++j) lk = std::max(lk, std::sqrt(B0.block(j).l2_norm_sq()));
        c.check("lp_almost_orthogonality", lk <= 1e-12 * std::sqrt(n.field().l2_norm_sq()));
    }
    {   // rhs orthogonality and beta identity
        const GilbertParams g = GilbertParams::make(0.6, 0.8);
        const VectorField3 v = rhs(n, K, g);
        const ScalarField nv = dot(v, n.field());
        c.check("rhs_orthogonal_to_n", nv.max_abs() < 1e-11 * (1.0 + v.max_abs()));
        const VectorField3 h = molecular_field(n, K);
        const VectorField3 nxh = cross(n.field(), h);
        double ip = 0.0, dn2 = 0.0;
        for (std::size_t i = 0; i < v.values.size(); ++i) {
            ip += v.values[i] * nxh.values[i];
            dn2 += v.values[i] * v.values[i];
        }
        c.check("beta_identity", std::abs(ip - g.beta * dn2) <= 1e-8 * std::abs(dn2));
    }
    c.check("positivity_audit", positivity_check(K, 200));
    return c.failures;
}

} // namespace ollg
