#include "ollg/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace ollg {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct KeyTable {
    std::string origin;
    std::map<std::string, std::pair<std::string, int>> kv;   // key -> (value, line)

    [[noreturn]] void fail(const std::string& key, int line, const std::string& what) const {
        throw ConfigError(origin + ":" + std::to_string(line) + ": " + key + ": " + what);
    }

    bool has(const std::string& key) const { return kv.count(key) != 0; }

    std::string take(const std::string& key) {
        auto it = kv.find(key);
        const std::string v = it->second.first;
        kv.erase(it);
        return v;
    }

    std::string require(const std::string& key) {
        if (!has(key)) throw ConfigError(origin + ": missing required key '" + key + "'");
        return take(key);
    }

    double num(const std::string& key, const std::string& raw, int line) const {
        try {
            std::size_t pos = 0;
            const double v = std::stod(raw, &pos);
            if (pos != raw.size()) fail(key, line, "trailing characters in number '" + raw + "'");
            return v;
        } catch (const ConfigError&) {
            throw;
        } catch (...) {
            fail(key, line, "expected a number, got '" + raw + "'");
        }
    }

    int line_of(const std::string& key) const {
        auto it = kv.find(key);
        return it == kv.end() ? 0 : it->second.second;
    }

    double take_num(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        const int line = line_of(key);
        return num(key, take(key), line);
    }

    double require_num(const std::string& key) {
        const int line = line_of(key);
        return num(key, require(key), line);
    }

    long take_int(const std::string& key, long fallback) {
        if (!has(key)) return fallback;
        const int line = line_of(key);
        const std::string raw = take(key);
        try {
            std::size_t pos = 0;
            const long v = std::stol(raw, &pos);
            if (pos != raw.size()) fail(key, line, "trailing characters in integer '" + raw + "'");
            return v;
        } catch (const ConfigError&) {
            throw;
        } catch (...) {
            fail(key, line, "expected an integer, got '" + raw + "'");
        }
    }

    long require_int(const std::string& key) {
        if (!has(key)) throw ConfigError(origin + ": missing required key '" + key + "'");
        return take_int(key, 0);
    }
};

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    KeyTable tab;
    tab.origin = origin;
    {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string s = trim(line);
            if (s.empty() || s[0] == '#') continue;
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": expected 'section.key = value'");
            const std::string key = trim(s.substr(0, eq));
            const std::string val = trim(s.substr(eq + 1));
            if (key.find('.') == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + key +
                                  ": key must be section.name");
            if (tab.kv.count(key))
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + key +
                                  ": duplicate key (first at line " +
                                  std::to_string(tab.kv[key].second) + ")");
            tab.kv[key] = {val, lineno};
        }
    }

    RunConfig cfg;
    try {
        cfg.grid = GridSpec::make(static_cast<int>(tab.require_int("grid.n_side")),
                                  tab.require_num("grid.length"));
        cfg.frank = FrankConstants::make(tab.require_num("frank.k1"), tab.require_num("frank.k2"),
                                         tab.require_num("frank.k3"), tab.take_num("frank.k4", 0.0));
        cfg.gilbert = GilbertParams::normalized(tab.require_num("gilbert.alpha"),
                                                tab.require_num("gilbert.beta"));

        double dt = 0.0;   // 0 selects the CFL bound
        if (tab.has("solver.dt")) {
            const int line = tab.line_of("solver.dt");
            const std::string raw = tab.take("solver.dt");
            if (raw != "auto") dt = tab.num("solver.dt", raw, line);
        }
        Scheme scheme = Scheme::rk4;
        if (tab.has("solver.scheme")) {
            const int line = tab.line_of("solver.scheme");
            const std::string raw = tab.take("solver.scheme");
            if (raw == "rk4") scheme = Scheme::rk4;
            else if (raw == "heun") scheme = Scheme::heun;
            else tab.fail("solver.scheme", line, "expected rk4 or heun, got '" + raw + "'");
        }
        std::optional<double> cutoff;
        if (tab.has("solver.friedrich_cutoff")) {
            const int line = tab.line_of("solver.friedrich_cutoff");
            const std::string raw = tab.take("solver.friedrich_cutoff");
            if (raw != "none") cutoff = tab.num("solver.friedrich_cutoff", raw, line);
        }
        bool projected = false;
        if (tab.has("solver.form")) {
            const int line = tab.line_of("solver.form");
            const std::string raw = tab.take("solver.form");
            if (raw == "eq14") projected = false;
            else if (raw == "projected") projected = true;
            else tab.fail("solver.form", line, "expected eq14 or projected, got '" + raw + "'");
        }
        cfg.solver = SolverConfig::make(
            dt, tab.require_num("solver.t_end"), scheme,
            static_cast<int>(tab.take_int("solver.renormalize_every", 1)), cutoff,
            tab.take_num("solver.cfl_safety", 0.4),
            static_cast<int>(tab.take_int("solver.output_stride", 1)), cfg.grid, cfg.frank,
            projected);

        cfg.diagnostics.R = tab.take_num("diagnostics.R", 0.5);
        cfg.diagnostics.epsilon0 = tab.take_num("diagnostics.epsilon0", 1.0);
        cfg.diagnostics.epsilon1 = tab.take_num("diagnostics.epsilon1", 0.5);
        cfg.diagnostics.monotonicity_radius = tab.take_num("diagnostics.monotonicity_radius", 0.5);
        cfg.diagnostics.map_stride = static_cast<int>(tab.take_int("diagnostics.map_stride", 4));
        cfg.diagnostics.weak_metric_s = tab.take_num("diagnostics.weak_metric_s", 0.5);
        {
            const double dx = cfg.grid.spacing();
            const double L = cfg.grid.length;
            if (!(cfg.diagnostics.R >= 2 * dx && cfg.diagnostics.R <= L / 4))
                throw ConfigError(origin + ": diagnostics.R: need 2 dx <= R <= L/4");
            if (!(cfg.diagnostics.monotonicity_radius >= 2 * dx &&
                  cfg.diagnostics.monotonicity_radius <= L / 8))
                throw ConfigError(origin +
                                  ": diagnostics.monotonicity_radius: need 2 dx <= R <= L/8 "
                                  "(the audit also sums disks of radius 2R)");
            if (!(cfg.diagnostics.epsilon0 > 0))
                throw ConfigError(origin + ": diagnostics.epsilon0: must be positive");
            if (cfg.diagnostics.map_stride < 1 || cfg.diagnostics.map_stride > cfg.grid.n_side / 4)
                throw ConfigError(origin + ": diagnostics.map_stride: must lie in [1, N/4]");
            if (!(cfg.diagnostics.weak_metric_s > 0 && cfg.diagnostics.weak_metric_s < 1))
                throw ConfigError(origin + ": diagnostics.weak_metric_s: must lie in (0,1)");
        }

        cfg.initial.kind = kind_from_string(tab.require("initial.kind"));
        cfg.initial.b = {tab.take_num("initial.b1", 0.0), tab.take_num("initial.b2", 0.0),
                         tab.take_num("initial.b3", 1.0)};
        cfg.initial.amplitude = tab.take_num("initial.amplitude", 0.3);
        cfg.initial.mode = static_cast<int>(tab.take_int("initial.mode", 1));
        cfg.initial.scale = tab.take_num("initial.scale", cfg.grid.length / 16.0);
        cfg.initial.center_x = tab.take_num("initial.center_x", 0.5);
        cfg.initial.center_y = tab.take_num("initial.center_y", 0.5);
        cfg.initial.modes = static_cast<int>(tab.take_int("initial.modes", 3));
        cfg.initial.seed = static_cast<std::uint64_t>(tab.take_int("initial.seed", 1));
        cfg.initial.perturbation = tab.take_num("initial.perturbation", 0.0);
        cfg.initial.perturbation_seed =
            static_cast<std::uint64_t>(tab.take_int("initial.perturbation_seed", 7));

        if (tab.has("output.directory")) cfg.output.directory = tab.take("output.directory");
        cfg.output.snapshot_stride = static_cast<int>(tab.take_int("output.snapshot_stride", 1));
        if (cfg.output.snapshot_stride < 1)
            throw ConfigError(origin + ": output.snapshot_stride: must be >= 1");
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }

    if (!tab.kv.empty()) {
        const auto& [key, vl] = *tab.kv.begin();
        throw ConfigError(origin + ":" + std::to_string(vl.second) + ": unknown key '" + key +
                          "'");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::string canonical_config_text(const RunConfig& cfg) {
    std::ostringstream o;
    o << "grid.n_side = " << cfg.grid.n_side << "\n";
    o << "grid.length = " << g17(cfg.grid.length) << "\n";
    o << "frank.k1 = " << g17(cfg.frank.k1) << "\n";
    o << "frank.k2 = " << g17(cfg.frank.k2) << "\n";
    o << "frank.k3 = " << g17(cfg.frank.k3) << "\n";
    o << "frank.k4 = " << g17(cfg.frank.k4) << "\n";
    o << "gilbert.alpha = " << g17(cfg.gilbert.alpha) << "\n";
    o << "gilbert.beta = " << g17(cfg.gilbert.beta) << "\n";
    o << "solver.dt = " << g17(cfg.solver.dt) << "\n";
    o << "solver.t_end = " << g17(cfg.solver.t_end) << "\n";
    o << "solver.scheme = " << (cfg.solver.scheme == Scheme::rk4 ? "rk4" : "heun") << "\n";
    o << "solver.renormalize_every = " << cfg.solver.renormalize_every << "\n";
    if (cfg.solver.friedrich_cutoff)
        o << "solver.friedrich_cutoff = " << g17(*cfg.solver.friedrich_cutoff) << "\n";
    o << "solver.cfl_safety = " << g17(cfg.solver.cfl_safety) << "\n";
    o << "solver.output_stride = " << cfg.solver.output_stride << "\n";
    o << "solver.form = " << (cfg.solver.projected_form ? "projected" : "eq14") << "\n";
    o << "diagnostics.R = " << g17(cfg.diagnostics.R) << "\n";
    o << "diagnostics.epsilon0 = " << g17(cfg.diagnostics.epsilon0) << "\n";
    o << "diagnostics.epsilon1 = " << g17(cfg.diagnostics.epsilon1) << "\n";
    o << "diagnostics.monotonicity_radius = " << g17(cfg.diagnostics.monotonicity_radius) << "\n";
    o << "diagnostics.map_stride = " << cfg.diagnostics.map_stride << "\n";
    o << "diagnostics.weak_metric_s = " << g17(cfg.diagnostics.weak_metric_s) << "\n";
    o << "initial.kind = " << to_string(cfg.initial.kind) << "\n";
    o << "initial.b1 = " << g17(cfg.initial.b[0]) << "\n";
    o << "initial.b2 = " << g17(cfg.initial.b[1]) << "\n";
    o << "initial.b3 = " << g17(cfg.initial.b[2]) << "\n";
    o << "initial.amplitude = " << g17(cfg.initial.amplitude) << "\n";
    o << "initial.mode = " << cfg.initial.mode << "\n";
    o << "initial.scale = " << g17(cfg.initial.scale) << "\n";
    o << "initial.center_x = " << g17(cfg.initial.center_x) << "\n";
    o << "initial.center_y = " << g17(cfg.initial.center_y) << "\n";
    o << "initial.modes = " << cfg.initial.modes << "\n";
    o << "initial.seed = " << cfg.initial.seed << "\n";
    o << "initial.perturbation = " << g17(cfg.initial.perturbation) << "\n";
    o << "initial.perturbation_seed = " << cfg.initial.perturbation_seed << "\n";
    o << "output.directory = " << cfg.output.directory << "\n";
    o << "output.snapshot_stride = " << cfg.output.snapshot_stride << "\n";
    return o.str();
}

} // namespace ollg
