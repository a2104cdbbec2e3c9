// Command-line driver: run | check-invariants | compare | spectrum | restart.
// Exit codes: 0 success, 1 error, 2 run flagged as blow-up (a scientific
// outcome, not a failure).

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "ollg/run_io.hpp"

namespace {

// OLLG_THREADS caps internal parallelism.  The numerical core is serial (and
// therefore deterministic); the cap is validated for forward compatibility.
void apply_thread_cap() {
    const char* env = std::getenv("OLLG_THREADS");
    if (!env) return;
    const long v = std::atol(env);
    if (v < 1) {
        std::cerr << "OLLG_THREADS must be a positive integer\n";
        std::exit(1);
    }
}

} // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"pseudospectral Oseen-Frank Landau-Lifshitz flow on the periodic plane"};
    app.require_subcommand(1);

    std::string config_path, out_dir, dir_a, dir_b, out_file;
    bool quiet = false;
    long seed_override = -1;
    double until = -1.0;

    CLI::App* cmd_run = app.add_subcommand("run", "integrate a configured scenario");
    cmd_run->add_option("--config", config_path, "config file")->required();
    cmd_run->add_option("--out", out_dir, "output directory (overrides config)");
    cmd_run->add_flag("--quiet", quiet, "suppress progress lines");
    cmd_run->add_option("--seed", seed_override, "override initial.seed");
    cmd_run->add_option("--until", until, "override solver.t_end");

    CLI::App* cmd_check = app.add_subcommand("check-invariants",
                                             "run the small-grid property suite");

    CLI::App* cmd_compare = app.add_subcommand("compare",
                                               "weak-metric distance between two runs");
    cmd_compare->add_option("dir_a", dir_a, "first run directory")->required();
    cmd_compare->add_option("dir_b", dir_b, "second run directory")->required();
    cmd_compare->add_option("--out", out_file, "output CSV (default: compare.csv)");

    CLI::App* cmd_spectrum = app.add_subcommand("spectrum",
                                                "per-block gradient energy of run snapshots");
    cmd_spectrum->add_option("dir", dir_a, "run directory")->required();
    cmd_spectrum->add_option("--out", out_file, "output CSV (default: <dir>/spectrum.csv)");

    CLI::App* cmd_restart = app.add_subcommand("restart",
                                               "resume a run from its latest snapshot");
    cmd_restart->add_option("--out", out_dir, "run directory")->required();
    cmd_restart->add_option("--until", until, "extend t_end");
    cmd_restart->add_flag("--quiet", quiet, "suppress progress lines");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            ollg::RunConfig cfg = ollg::load_config(config_path);
            if (seed_override >= 0)
                cfg.initial.seed = static_cast<std::uint64_t>(seed_override);
            if (until > 0.0) cfg.solver.t_end = until;
            const std::string dir = out_dir.empty() ? cfg.output.directory : out_dir;
            cfg.output.directory = dir;
            const ollg::RunSummary s = ollg::perform_run(cfg, dir, quiet);
            if (!quiet)
                std::cerr << "wrote " << s.n_records << " records to " << dir
                          << (s.flagged ? "  [flagged: " + s.flag_reason + "]" : "") << "\n";
            return s.flagged ? 2 : 0;
        }
        if (cmd_check->parsed()) {
            return ollg::check_invariants(std::cout) == 0 ? 0 : 1;
        }
        if (cmd_compare->parsed()) {
            const ollg::CompareSeries series = ollg::compare_runs(dir_a, dir_b);
            const std::string path = out_file.empty() ? "compare.csv" : out_file;
            ollg::write_compare_csv(path, series);
            std::cout << "W0 = " << series.W0 << "  fitted_C = " << series.fitted_C << "  ("
                      << series.t.size() << " matched snapshots) -> " << path << "\n";
            return 0;
        }
        if (cmd_spectrum->parsed()) {
            const std::string path = out_file.empty() ? dir_a + "/spectrum.csv" : out_file;
            ollg::write_spectrum_csv(dir_a, path);
            std::cout << "wrote " << path << "\n";
            return 0;
        }
        if (cmd_restart->parsed()) {
            const ollg::RunSummary s = ollg::perform_restart(
                out_dir, until > 0.0 ? std::optional<double>(until) : std::nullopt, quiet);
            if (!quiet)
                std::cerr << "resumed to t=" << s.final_time
                          << (s.flagged ? "  [flagged: " + s.flag_reason + "]" : "") << "\n";
            return s.flagged ? 2 : 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
