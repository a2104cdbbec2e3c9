#pragma once

#include <string>

#include "ollg/diagnostics.hpp"
#include "ollg/initial_data.hpp"

namespace ollg {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputSpec {
    std::string directory = "out";
    int snapshot_stride = 1;   // in output records
};

struct RunConfig {
    GridSpec grid;
    FrankConstants frank;
    GilbertParams gilbert;
    SolverConfig solver;
    DiagnosticsParams diagnostics;
    InitialSpec initial;
    OutputSpec output;
};

/// Strict line-oriented `section.key = value` parser.  Unknown or duplicate
/// keys are rejected; errors carry the file name, line number and key.
/// Full-line comments start with '#'.
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin);

/// Canonical round-trippable echo (17 significant digits everywhere).
std::string canonical_config_text(const RunConfig& cfg);

} // namespace ollg
