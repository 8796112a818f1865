#include "nlsq/config.hpp"
#include "nlsq/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <random>

int main(int argc, char** argv) {
    CLI::App app{"Spectral simulator for Schrodinger equations with quadratic potentials"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    int jobs = 0;
    unsigned seed = 12345;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", config_path, "config file (key = value lines)");
        if (config_required) opt->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--jobs", jobs, "worker threads (0 = hardware)");
        sub->add_option("--seed", seed, "seed for randomized suites");
    };

    CLI::App* run = app.add_subcommand("run", "single simulation run");
    add_common(run, true);
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep");
    add_common(sweep, true);
    CLI::App* rays = app.add_subcommand("rays", "classical ray trajectories");
    add_common(rays, true);
    CLI::App* gstate = app.add_subcommand("groundstate", "export the ground-state profile");
    add_common(gstate, true);
    CLI::App* tcheck = app.add_subcommand("transform-check", "lens-transform coherence suite");
    add_common(tcheck, false);
    CLI::App* scatter = app.add_subcommand("scatter", "asymptotic-state convergence monitor");
    add_common(scatter, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (tcheck->parsed()) return nlsq::transform_check_command(out_dir);
        nlsq::RunConfig cfg = nlsq::load_config(config_path);
        if (run->parsed()) return nlsq::run_command(cfg, out_dir);
        if (sweep->parsed()) return nlsq::sweep_command(cfg, out_dir, jobs);
        if (rays->parsed()) return nlsq::rays_command(cfg, out_dir);
        if (gstate->parsed()) return nlsq::groundstate_command(cfg, out_dir);
        if (scatter->parsed()) return nlsq::scatter_command(cfg, out_dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
