#include "nlsq/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace nlsq {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

Real parse_real(const std::string& v, int line, const std::string& key) {
    std::size_t pos = 0;
    Real x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        fail(line, key + ": expected a number, got '" + v + "'");
    }
    if (pos != v.size()) fail(line, key + ": trailing characters in '" + v + "'");
    return x;
}

long parse_int(const std::string& v, int line, const std::string& key) {
    const Real x = parse_real(v, line, key);
    const long n = std::lround(x);
    if (x != Real(n)) fail(line, key + ": expected an integer, got '" + v + "'");
    return n;
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    fail(line, key + ": expected true/false, got '" + v + "'");
}

std::vector<Real> parse_list(const std::string& v, int line,
                             const std::string& key) {
    std::vector<Real> out;
    std::istringstream ss(v);
    std::string tok;
    while (ss >> tok) {
        if (!tok.empty() && tok.back() == ',') tok.pop_back();
        if (tok.empty()) continue;
        out.push_back(parse_real(tok, line, key));
    }
    if (out.empty()) fail(line, key + ": empty value list");
    return out;
}

void parse_vec3(const std::string& v, int line, const std::string& key,
                std::array<Real, 3>& out) {
    auto vals = parse_list(v, line, key);
    if (vals.size() > 3) fail(line, key + ": at most 3 components");
    out = {0, 0, 0};
    for (std::size_t i = 0; i < vals.size(); ++i) out[i] = vals[i];
}

PotentialKind parse_kind(const std::string& v, int line, const std::string& key) {
    if (v == "free") return PotentialKind::Free;
    if (v == "confining") return PotentialKind::Confining;
    if (v == "repulsive") return PotentialKind::Repulsive;
    fail(line, key + ": expected free|confining|repulsive, got '" + v + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    bool omega_given = false;
    int pot_kind_line = 0;
    int sigma_line = 0;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    SweepAxis axis1, axis2;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (val.empty()) fail(lineno, key + ": empty value");

        if (key == "grid.n") cfg.grid_n = static_cast<int>(parse_int(val, lineno, key));
        else if (key == "grid.m") cfg.grid_m = static_cast<int>(parse_int(val, lineno, key));
        else if (key == "grid.L") cfg.grid_L = parse_real(val, lineno, key);
        else if (key == "potential.kind") {
            cfg.pot.kind = parse_kind(val, lineno, key);
            pot_kind_line = lineno;
        } else if (key == "potential.omega") {
            cfg.pot.omega = parse_real(val, lineno, key);
            omega_given = true;
        } else if (key == "nl.lambda") cfg.nl.lambda = parse_real(val, lineno, key);
        else if (key == "nl.sigma") {
            cfg.nl.sigma = parse_real(val, lineno, key);
            sigma_line = lineno;
        } else if (key == "solver.dt0") cfg.solver.dt0 = parse_real(val, lineno, key);
        else if (key == "solver.t_end") cfg.solver.t_end = parse_real(val, lineno, key);
        else if (key == "solver.record_every")
            cfg.solver.record_every = static_cast<int>(parse_int(val, lineno, key));
        else if (key == "solver.adapt") cfg.solver.adapt = parse_bool(val, lineno, key);
        else if (key == "solver.grad_ceiling")
            cfg.solver.grad_ceiling = parse_real(val, lineno, key);
        else if (key == "solver.resolution_guard")
            cfg.solver.resolution_guard = parse_real(val, lineno, key);
        else if (key == "init.kind") {
            if (val == "gaussian") cfg.init.kind = InitKind::Gaussian;
            else if (val == "merle") cfg.init.kind = InitKind::Merle;
            else if (val == "snapshot") cfg.init.kind = InitKind::Snapshot;
            else fail(lineno, "init.kind: expected gaussian|merle|snapshot");
        } else if (key == "init.amplitude")
            cfg.init.gauss.amplitude = parse_real(val, lineno, key);
        else if (key == "init.width") cfg.init.gauss.width = parse_real(val, lineno, key);
        else if (key == "init.chirp") cfg.init.gauss.chirp = parse_real(val, lineno, key);
        else if (key == "init.center") parse_vec3(val, lineno, key, cfg.init.gauss.center);
        else if (key == "init.T") cfg.init.merle.T = parse_real(val, lineno, key);
        else if (key == "init.delta") cfg.init.merle.delta = parse_real(val, lineno, key);
        else if (key == "init.theta") cfg.init.merle.theta = parse_real(val, lineno, key);
        else if (key == "init.x0") parse_vec3(val, lineno, key, cfg.init.merle.x0);
        else if (key == "init.x1") parse_vec3(val, lineno, key, cfg.init.merle.x1);
        else if (key == "init.path") cfg.init.snapshot_path = val;
        else if (key == "output.csv") cfg.output_csv = val;
        else if (key == "output.snapshot") cfg.output_snapshot = val;
        else if (key == "sweep.parameter") axis1.parameter = val;
        else if (key == "sweep.values") axis1.values = parse_list(val, lineno, key);
        else if (key == "sweep.parameter2") axis2.parameter = val;
        else if (key == "sweep.values2") axis2.values = parse_list(val, lineno, key);
        else if (key == "sweep.cap") cfg.sweep_cap = static_cast<int>(parse_int(val, lineno, key));
        else if (key == "rays.kind") cfg.rays.kind = parse_kind(val, lineno, key);
        else if (key == "rays.chirp") cfg.rays.chirp = parse_real(val, lineno, key);
        else if (key == "rays.offset") cfg.rays.offset = parse_real(val, lineno, key);
        else if (key == "rays.fan") cfg.rays.fan = static_cast<int>(parse_int(val, lineno, key));
        else if (key == "rays.x0_max") cfg.rays.x0_max = parse_real(val, lineno, key);
        else if (key == "rays.t_max") cfg.rays.t_max = parse_real(val, lineno, key);
        else if (key == "rays.samples") cfg.rays.samples = static_cast<int>(parse_int(val, lineno, key));
        else if (key == "groundstate.n") cfg.gs_n = static_cast<int>(parse_int(val, lineno, key));
        else if (key == "groundstate.lambda") cfg.gs_lambda = parse_real(val, lineno, key);
        else fail(lineno, "unknown key '" + key + "'");
    }

    if (!axis1.parameter.empty() || !axis1.values.empty()) {
        if (axis1.parameter.empty() || axis1.values.empty())
            throw ConfigError("config: sweep.parameter and sweep.values must both be set");
        cfg.sweep.push_back(axis1);
    }
    if (!axis2.parameter.empty() || !axis2.values.empty()) {
        if (cfg.sweep.empty())
            throw ConfigError("config: sweep axis 2 given without axis 1");
        if (axis2.parameter.empty() || axis2.values.empty())
            throw ConfigError("config: sweep.parameter2 and sweep.values2 must both be set");
        cfg.sweep.push_back(axis2);
    }

    // cross-field validation
    if (cfg.pot.kind != PotentialKind::Free && !omega_given)
        throw ConfigError("config line " + std::to_string(pot_kind_line) +
                          ": potential.kind requires potential.omega");
    if (cfg.grid_n >= 3 && !(cfg.nl.sigma < 2.0 / (cfg.grid_n - 2)))
        throw ConfigError("config line " + std::to_string(sigma_line) +
                          ": nl.sigma violates sigma < 2/(n-2) for grid.n = " +
                          std::to_string(cfg.grid_n));
    (void)make_grid(cfg.grid_n, cfg.grid_m, cfg.grid_L);  // grid constraints
    cfg.pot.validate();
    cfg.nl.validate(cfg.grid_n);
    if (cfg.init.kind == InitKind::Snapshot && cfg.init.snapshot_path.empty())
        throw ConfigError("config: init.kind = snapshot requires init.path");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

void set_parameter(RunConfig& cfg, const std::string& name, Real value) {
    if (name == "potential.omega") cfg.pot.omega = value;
    else if (name == "nl.lambda") cfg.nl.lambda = value;
    else if (name == "nl.sigma") cfg.nl.sigma = value;
    else if (name == "solver.dt0") cfg.solver.dt0 = value;
    else if (name == "solver.t_end") cfg.solver.t_end = value;
    else if (name == "init.amplitude") cfg.init.gauss.amplitude = value;
    else if (name == "init.width") cfg.init.gauss.width = value;
    else if (name == "init.chirp") cfg.init.gauss.chirp = value;
    else if (name == "init.T") cfg.init.merle.T = value;
    else if (name == "init.delta") cfg.init.merle.delta = value;
    else throw ConfigError("unsupported sweep parameter '" + name + "'");
}

}  // namespace nlsq
