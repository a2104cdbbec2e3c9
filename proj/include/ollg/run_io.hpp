#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ollg/config.hpp"

namespace ollg {

struct RunSummary {
    bool flagged = false;
    std::size_t n_records = 0;
    double final_time = 0.0;
    std::string flag_reason;
};

/// Executes a configured run into out_dir: records.csv, snap_XXXXXXXX.bin at
/// the snapshot stride (final record always), config.echo and manifest.txt.
/// A .lock file guards the directory against concurrent writers.
RunSummary perform_run(const RunConfig& cfg, const std::string& out_dir, bool quiet = true);

/// Resumes a run directory from its latest snapshot; continuation is
/// bit-identical to the uninterrupted run.  `until` optionally extends t_end.
RunSummary perform_restart(const std::string& run_dir, std::optional<double> until,
                           bool quiet = true);

struct CompareSeries {
    std::vector<double> t;
    std::vector<double> W_total;
    std::vector<double> hbar_value;
    std::vector<double> hbar_integral;
    std::vector<double> bound_ratio;   // W(t) / (W(0+) exp(C int hbar))
    double fitted_C = 0.0;
    double W0 = 0.0;
};

/// Weak-metric distance between two runs across matched snapshots, with the
/// fitted Gronwall constant.  Grids must match.
CompareSeries compare_runs(const std::string& dir_a, const std::string& dir_b);
void write_compare_csv(const std::string& path, const CompareSeries& series);

/// Per-block L2 energy of grad n for every snapshot: CSV rows t,j,energy.
void write_spectrum_csv(const std::string& run_dir, const std::string& out_path);

/// Small-grid property suite; prints one PASS/FAIL line per property and
/// returns the number of failures.
int check_invariants(std::ostream& out);

std::string snapshot_path(const std::string& dir, long record_index);

} // namespace ollg
