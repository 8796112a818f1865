#include "nlsq/runner.hpp"

#include "nlsq/criteria.hpp"
#include "nlsq/snapshot.hpp"
#include "nlsq/spectral.hpp"
#include "nlsq/transforms.hpp"

#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace nlsq {

namespace fs = std::filesystem;

namespace {

std::string fmt_real(Real v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const GroundStateQ& cached_q(int dim, Real lambda) {
    static std::mutex mu;
    static std::map<std::pair<int, Real>, GroundStateQ> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(dim, lambda);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, solve_q(dim, lambda)).first;
    return it->second;
}

void write_observables_csv(const std::string& path,
                           const std::vector<ObservableRecord>& series,
                           Real t_offset) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fputs(
        "t,mass,energy,e1,e2,variance_y,momentum_p,j_norm,h_norm,grad_norm,"
        "nl_norm,sup_norm\n",
        f);
    for (const auto& r : series) {
        std::fprintf(f,
                     "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                     "%.17g,%.17g,%.17g\n",
                     t_offset + r.t, r.mass, r.energy, r.e1, r.e2, r.variance_y,
                     r.momentum_p, r.j_norm, r.h_norm, r.grad_norm, r.nl_norm,
                     r.sup_norm);
    }
    std::fclose(f);
}

int status_exit_code(RunStatus s) {
    switch (s) {
        case RunStatus::Completed: return 0;
        case RunStatus::BlowupDetected: return 2;
        default: return 3;
    }
}

struct SingleRunResult {
    RunStatus status;
    Real t_stop;
    Real blowup_estimate;  // NaN when none
};

SingleRunResult execute_run(const RunConfig& cfg, const std::string& out_dir) {
    fs::create_directories(out_dir);
    Real t0 = 0;
    Field u0 = build_initial(cfg, t0);
    SolverConfig scfg = cfg.solver;
    scfg.t_end = cfg.solver.t_end - t0;  // t_end is absolute, snapshots resume
    if (scfg.t_end == 0)
        throw ConfigError("run: snapshot already at solver.t_end");
    RunOutcome out = evolve(u0, cfg.pot, cfg.nl, scfg);
    write_observables_csv((fs::path(out_dir) / cfg.output_csv).string(),
                          out.series, t0);
    snapshot_write(out.final, t0 + out.t_stop,
                   (fs::path(out_dir) / cfg.output_snapshot).string());
    SingleRunResult res{out.status, t0 + out.t_stop,
                        std::numeric_limits<Real>::quiet_NaN()};
    if (out.status == RunStatus::BlowupDetected) {
        if (auto est = detect_blowup(out.series))
            res.blowup_estimate = (out.t_stop < 0 ? -est->time : est->time) + t0;
    }
    return res;
}

}  // namespace

Field build_initial(const RunConfig& cfg, Real& t0) {
    t0 = 0;
    switch (cfg.init.kind) {
        case InitKind::Gaussian: {
            GridPtr grid = make_grid(cfg.grid_n, cfg.grid_m, cfg.grid_L);
            return sample_gaussian(grid, cfg.init.gauss);
        }
        case InitKind::Merle: {
            GridPtr grid = make_grid(cfg.grid_n, cfg.grid_m, cfg.grid_L);
            const Real lam = cfg.nl.lambda < 0 ? cfg.nl.lambda : -1;
            return merle_initial_data(grid, cached_q(cfg.grid_n, lam),
                                      cfg.init.merle);
        }
        case InitKind::Snapshot: {
            auto [f, t] = snapshot_read(cfg.init.snapshot_path);
            t0 = t;
            return f;
        }
    }
    throw ConfigError("unreachable init kind");
}

int run_command(const RunConfig& cfg, const std::string& out_dir) {
    SingleRunResult res = execute_run(cfg, out_dir);
    std::printf("status=%s t_stop=%.17g", status_name(res.status), res.t_stop);
    if (res.status == RunStatus::BlowupDetected && res.blowup_estimate == res.blowup_estimate)
        std::printf(" blowup_estimate=%.17g", res.blowup_estimate);
    std::printf("\n");
    return status_exit_code(res.status);
}

int sweep_command(const RunConfig& cfg, const std::string& out_dir, int jobs) {
    if (cfg.sweep.empty()) throw ConfigError("sweep: no sweep axes configured");
    if (cfg.sweep.size() > 2) throw ConfigError("sweep: at most 2 axes");

    struct Combo {
        std::vector<Real> values;
        RunConfig cfg;
    };
    std::vector<Combo> combos;
    const auto& ax1 = cfg.sweep[0];
    if (cfg.sweep.size() == 1) {
        for (Real v : ax1.values) {
            RunConfig c = cfg;
            c.sweep.clear();
            set_parameter(c, ax1.parameter, v);
            combos.push_back({{v}, std::move(c)});
        }
    } else {
        const auto& ax2 = cfg.sweep[1];
        for (Real v1 : ax1.values)
            for (Real v2 : ax2.values) {
                RunConfig c = cfg;
                c.sweep.clear();
                set_parameter(c, ax1.parameter, v1);
                set_parameter(c, ax2.parameter, v2);
                combos.push_back({{v1, v2}, std::move(c)});
            }
    }
    if (static_cast<int>(combos.size()) > cfg.sweep_cap)
        throw ConfigError("sweep: " + std::to_string(combos.size()) +
                          " runs exceed sweep.cap = " + std::to_string(cfg.sweep_cap));

    fs::create_directories(out_dir);
    std::vector<SingleRunResult> results(combos.size());
    std::vector<std::string> errors(combos.size());
    std::atomic<std::size_t> next{0};
    if (jobs < 1) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= combos.size()) return;
            char name[32];
            std::snprintf(name, sizeof name, "run_%03zu", i);
            try {
                results[i] = execute_run(combos[i].cfg,
                                         (fs::path(out_dir) / name).string());
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    const std::string summary = (fs::path(out_dir) / "summary.csv").string();
    std::FILE* f = std::fopen(summary.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + summary);
    std::fprintf(f, "run,%s", cfg.sweep[0].parameter.c_str());
    if (cfg.sweep.size() == 2) std::fprintf(f, ",%s", cfg.sweep[1].parameter.c_str());
    std::fputs(",status,exit_code,t_stop,blowup_estimate\n", f);
    bool any_error = false;
    for (std::size_t i = 0; i < combos.size(); ++i) {
        std::fprintf(f, "%zu", i);
        for (Real v : combos[i].values) std::fprintf(f, ",%s", fmt_real(v).c_str());
        if (!errors[i].empty()) {
            std::fprintf(f, ",error,1,,\n");
            std::fprintf(stderr, "run %zu failed: %s\n", i, errors[i].c_str());
            any_error = true;
            continue;
        }
        const auto& r = results[i];
        std::fprintf(f, ",%s,%d,%s,", status_name(r.status),
                     status_exit_code(r.status), fmt_real(r.t_stop).c_str());
        if (r.blowup_estimate == r.blowup_estimate)
            std::fputs(fmt_real(r.blowup_estimate).c_str(), f);
        std::fputs("\n", f);
    }
    std::fclose(f);
    std::printf("sweep: %zu runs, summary at %s\n", combos.size(), summary.c_str());
    return any_error ? 1 : 0;
}

int rays_command(const RunConfig& cfg, const std::string& out_dir) {
    const RaySpec& rs = cfg.rays;
    if (rs.fan < 1 || rs.samples < 2) throw ConfigError("rays: bad fan/samples");
    fs::create_directories(out_dir);
    const std::string path = (fs::path(out_dir) / "rays.csv").string();
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);

    std::vector<Real> x0s;
    for (int i = 0; i < rs.fan; ++i)
        x0s.push_back(rs.fan == 1 ? rs.x0_max
                                  : -rs.x0_max + 2 * rs.x0_max * i / (rs.fan - 1));
    std::fputs("t", f);
    for (Real x0 : x0s) std::fprintf(f, ",x0_%s", fmt_real(x0).c_str());
    std::fputs("\n", f);
    for (int k = 0; k < rs.samples; ++k) {
        const Real t = rs.t_max * k / (rs.samples - 1);
        std::fputs(fmt_real(t).c_str(), f);
        for (Real x0 : x0s) {
            Real x;
            switch (rs.kind) {
                case PotentialKind::Free: x = ray_free(x0, rs.chirp, t); break;
                case PotentialKind::Confining:
                    x = ray_confining(x0, cfg.pot.omega, rs.offset, t);
                    break;
                default: x = ray_repulsive(x0, cfg.pot.omega, rs.chirp, t);
            }
            std::fprintf(f, ",%s", fmt_real(x).c_str());
        }
        std::fputs("\n", f);
    }
    std::fclose(f);
    std::printf("rays: wrote %s\n", path.c_str());
    return 0;
}

int groundstate_command(const RunConfig& cfg, const std::string& out_dir) {
    const GroundStateQ& q = cached_q(cfg.gs_n, cfg.gs_lambda);
    fs::create_directories(out_dir);

    const std::string csv = (fs::path(out_dir) / "q_profile.csv").string();
    std::FILE* f = std::fopen(csv.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + csv);
    std::fputs("r,Q\n", f);
    for (std::size_t i = 0; i < q.samples.size(); ++i)
        std::fprintf(f, "%s,%s\n", fmt_real(i * q.dr).c_str(),
                     fmt_real(q.samples[i]).c_str());
    std::fclose(f);

    GridPtr grid = make_grid(cfg.gs_n, cfg.grid_m, cfg.grid_L);
    CArray v(grid->size());
    for (std::size_t i = 0; i < grid->size(); ++i)
        v[i] = q.eval(std::sqrt(grid->x_squared(i)));
    snapshot_write(Field{grid, std::move(v)}, 0,
                   (fs::path(out_dir) / "q_field.snap").string());

    std::printf("groundstate: n=%d lambda=%s Q(0)=%s mass=%s residual=%s "
                "weinstein_c=%s\n",
                q.dim, fmt_real(q.lambda).c_str(), fmt_real(q.q0()).c_str(),
                fmt_real(q.mass).c_str(), fmt_real(ode_residual(q)).c_str(),
                fmt_real(weinstein_constant(q, q.lambda, q.dim)).c_str());
    return 0;
}

int transform_check_command(const std::string& out_dir) {
    (void)out_dir;
    int failures = 0;
    auto report = [&](const char* name, Real value, Real tol) {
        const bool ok = value < tol;
        std::printf("%-34s %9.3g  (tol %.1g)  %s\n", name, value, tol,
                    ok ? "PASS" : "FAIL");
        if (!ok) ++failures;
    };

    const Real omega = 1;
    GridPtr vg = make_grid(1, 1024, 24);
    Field v0 = sample_gaussian(vg, ChirpedGaussian{1, 1, {0, 0, 0}, 0});

    // mass preservation of the lens map at a few times
    Real worst_mass = 0;
    for (Real t : {0.3, 0.8, 1.5}) {
        Field u = lens_repulsive(v0, t, omega);
        worst_mass = std::max(worst_mass,
                              std::abs(l2_norm(u) - l2_norm(v0)) / l2_norm(v0));
    }
    report("lens mass preservation", worst_mass, 1e-6);

    // J-norm identity on a linear run of the free equation
    Real worst_j = 0;
    {
        NonlinearitySpec lin{0, 1};
        PotentialSpec free_pot{PotentialKind::Free, 0};
        for (Real t : {0.5, 1.0, 1.5}) {
            const Real s = lens_time_repulsive(t, omega);
            SolverConfig c;
            c.dt0 = 1e-3;
            c.t_end = s;
            c.record_every = 1 << 30;
            RunOutcome r = evolve(v0, free_pot, lin, c);
            worst_j = std::max(worst_j, j_norm_identity_check(r.final, omega, t));
        }
    }
    report("J-norm identity (linear)", worst_j, 1e-6);

    // composition coherence at the critical power
    {
        NonlinearitySpec nl{-1, 2};
        const Real t = 0.8;
        const Real s = lens_time_repulsive(t, omega);
        SolverConfig c;
        c.dt0 = 2e-4;
        c.t_end = s;
        c.record_every = 1 << 30;
        Field small = v0;
        small.values *= 0.5;
        PotentialSpec free_pot{PotentialKind::Free, 0};
        RunOutcome free_run = evolve(small, free_pot, nl, c);
        Field via_lens = lens_repulsive(free_run.final, t, omega);
        SolverConfig cu = c;
        cu.t_end = t;
        PotentialSpec rep{PotentialKind::Repulsive, omega};
        RunOutcome direct = evolve(small, rep, nl, cu);
        report("lens/evolve composition",
               l2_distance(via_lens, direct.final) / l2_norm(direct.final), 1e-3);
    }

    std::printf(failures ? "transform-check: FAIL\n" : "transform-check: PASS\n");
    return failures ? 1 : 0;
}

int scatter_command(const RunConfig& cfg, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const Real omega =
        cfg.pot.kind == PotentialKind::Repulsive ? cfg.pot.omega : 1.0;
    GridPtr grid = make_grid(cfg.grid_n, cfg.grid_m, cfg.grid_L);
    Real t0 = 0;
    Field u0 = build_initial(cfg, t0);
    (void)grid;
    std::vector<Real> times{2 / omega, 4 / omega, 8 / omega};
    LensScatteringResult res =
        lens_frame_scattering(u0, omega, cfg.nl, times, cfg.solver.dt0);

    const std::string path = (fs::path(out_dir) / "scattering.csv").string();
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fputs("t,sigma_distance\n", f);
    for (std::size_t k = 0; k < res.trace.times.size(); ++k)
        std::fprintf(f, "%s,%s\n", fmt_real(res.trace.times[k]).c_str(),
                     fmt_real(res.trace.distances[k]).c_str());
    std::fclose(f);

    bool decreasing = true;
    for (std::size_t k = 1; k < res.trace.distances.size(); ++k)
        decreasing = decreasing &&
                     res.trace.distances[k] < res.trace.distances[k - 1];
    std::printf("scatter: distances");
    for (Real d : res.trace.distances) std::printf(" %.3g", d);
    std::printf(" -> %s\n", decreasing ? "decreasing" : "NOT decreasing");
    return decreasing ? 0 : 1;
}

}  // namespace nlsq
