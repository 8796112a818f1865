#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nlsq/grid.hpp"
#include "nlsq/groundstate.hpp"
#include "nlsq/observables.hpp"
#include "nlsq/propagators.hpp"
#include "nlsq/solver.hpp"

#include <cmath>

using namespace nlsq;

TEST_CASE("strang step with no potential and no coupling is the kinetic flow") {
    auto g = make_grid(1, 512, 16);
    Field f = sample_gaussian(g, ChirpedGaussian{1, 1, {0, 0, 0}, 0});
    Field a = strang_step(f, 1e-2, PotentialSpec{}, NonlinearitySpec{0, 1});
    Field b = kinetic_step(f, 1e-2);
    CHECK(sup_distance(a, b) < 1e-14);
}

TEST_CASE("1000 linear strang steps match the exact propagator") {
    auto g = make_grid(1, 1024, 16);
    Field u = sample_gaussian(g, ChirpedGaussian{1, 1, {0, 0, 0}, 0});
    PotentialSpec pot{PotentialKind::Repulsive, 1.0};
    NonlinearitySpec nl{0, 1};
    Field v = u;
    for (int k = 0; k < 1000; ++k) v = strang_step(v, 1e-3, pot, nl);
    Field ex = mehler_repulsive(u, 1.0, 1.0);
    CHECK(l2_distance(v, ex) < 1e-6);
}

TEST_CASE("mass is conserved to roundoff over long nonlinear runs") {
    auto g = make_grid(1, 1024, 16);
    Field u0 = sample_gaussian(g, ChirpedGaussian{1, 1, {0, 0, 0}, 0});
    PotentialSpec pot{PotentialKind::Confining, 1.0};
    for (Real lam : {1.0, -1.0}) {
        for (Real sigma : {1.0, 2.0}) {
            NonlinearitySpec nl{lam, sigma};
            SolverConfig cfg;
            cfg.dt0 = 1e-3;
            cfg.t_end = 10.0;  // 10^4 steps
            cfg.record_every = 500;
            RunOutcome out = evolve(u0, pot, nl, cfg);
            REQUIRE(out.status == RunStatus::Completed);
            const Real m0 = out.series.front().mass;
            for (const auto& r : out.series)
                CHECK(std::abs(r.mass - m0) < 1e-10 * m0);
        }
    }
}

TEST_CASE("energy drift is second order in dt") {
    auto g = make_grid(1, 1024, 16);
    Field u0 = sample_gaussian(g, ChirpedGaussian{1, 1, {0, 0, 0}, 0});
    PotentialSpec pot{PotentialKind::Confining, 1.0};
    NonlinearitySpec nl{1.0, 1.0};
    auto drift = [&](Real dt) {
        SolverConfig cfg;
        cfg.dt0 = dt;
        cfg.t_end = 2.0;
        cfg.record_every = 1 << 20;  // endpoints only
        RunOutcome out = evolve(u0, pot, nl, cfg);
        return std::abs(out.series.back().energy - out.series.front().energy);
    };
    const Real d1 = drift(2e-3), d2 = drift(1e-3);
    CHECK(d1 / d2 >= 3.5);
}

TEST_CASE("self-convergence at second order") {
    auto g = make_grid(1, 1024, 16);
    Field u0 = sample_gaussian(g, ChirpedGaussian{1, 1, {0, 0, 0}, 0});
    PotentialSpec pot{PotentialKind::Repulsive, 1.0};
    NonlinearitySpec nl{-1.0, 1.0};
    auto run = [&](Real dt) {
        SolverConfig cfg;
        cfg.dt0 = dt;
        cfg.t_end = 0.5;
        cfg.record_every = 1 << 20;
        return evolve(u0, pot, nl, cfg).final;
    };
    Field ref = run(5e-4 / 8);
    const Real e1 = l2_distance(run(4e-3), ref);
    const Real e2 = l2_distance(run(2e-3), ref);
    const Real ratio = e1 / e2;
    CHECK(ratio >= 3.6);
    CHECK(ratio <= 4.4);
}

TEST_CASE("time reversal returns to the initial data") {
    auto g = make_grid(1, 1024, 16);
    Field u0 = sample_gaussian(g, ChirpedGaussian{1, 1, {0, 0, 0}, 0});
    PotentialSpec pot{PotentialKind::Repulsive, 1.0};
    NonlinearitySpec nl{-1.0, 1.0};
    SolverConfig fwd;
    fwd.dt0 = 1e-3;
    fwd.t_end = 1.0;
    fwd.record_every = 1 << 20;
    RunOutcome out = evolve(u0, pot, nl, fwd);
    REQUIRE(out.status == RunStatus::Completed);

    SolverConfig bwd = fwd;
    bwd.t_end = -1.0;
    RunOutcome back = evolve(out.final, pot, nl, bwd);
    REQUIRE(back.status == RunStatus::Completed);
    // forward L2 defect at this resolution is ~1e-7 (see self-convergence);
    // the round trip must stay within an order of magnitude of it
    CHECK(l2_distance(back.final, u0) < 1e-6);
}

TEST_CASE("linear runs complete and match the one-shot propagator") {
    auto g = make_grid(1, 2048, 24);  // wide box: the packet spreads ~cosh(t)
    Field u0 = sample_gaussian(g, ChirpedGaussian{1, 1, {0, 0, 0}, 0});
    PotentialSpec pot{PotentialKind::Repulsive, 1.0};
    NonlinearitySpec nl{0, 1};
    SolverConfig cfg;
    cfg.dt0 = 5e-4;
    cfg.t_end = 1.5;
    cfg.record_every = 100;
    RunOutcome out = evolve(u0, pot, nl, cfg);
    REQUIRE(out.status == RunStatus::Completed);
    CHECK(l2_distance(out.final, mehler_repulsive(u0, 1.5, 1.0)) < 1e-6);
}

TEST_CASE("record times are strictly monotone") {
    auto g = make_grid(1, 512, 16);
    Field u0 = sample_gaussian(g, ChirpedGaussian{1, 1, {0, 0, 0}, 0});
    SolverConfig cfg;
    cfg.dt0 = 1e-3;
    cfg.t_end = 0.105;  // horizon not a multiple of the record interval
    cfg.record_every = 10;
    RunOutcome out = evolve(u0, PotentialSpec{}, NonlinearitySpec{1, 1}, cfg);
    for (std::size_t k = 1; k < out.series.size(); ++k)
        CHECK(out.series[k].t > out.series[k - 1].t);
    CHECK(out.series.back().t == doctest::Approx(0.105).epsilon(1e-12));
}

TEST_CASE("focusing blow-up data trips the gradient ceiling") {
    GroundStateQ q = solve_q(1, -1.0);
    auto g = make_grid(1, 2048, 12);
    Field u0 = merle_initial_data(g, q, MerleParams{});  // free blow-up at T=1
    NonlinearitySpec nl{-1.0, 2.0};
    SolverConfig cfg;
    cfg.dt0 = 5e-4;
    cfg.t_end = 2.0;
    cfg.record_every = 20;
    cfg.adapt = true;
    cfg.grad_ceiling = 80.0;
    RunOutcome out = evolve(u0, PotentialSpec{}, nl, cfg);
    REQUIRE(out.status == RunStatus::BlowupDetected);
    CHECK(out.t_stop < 1.05);
    auto est = detect_blowup(out.series);
    REQUIRE(est.has_value());
    CHECK(est->time >= 0.93);
    CHECK(est->time <= 1.07);
}

TEST_CASE("detect_blowup recovers the exponent model it fits") {
    std::vector<ObservableRecord> series;
    for (int k = 0; k <= 190; ++k) {
        ObservableRecord r;
        r.t = 0.8 + 0.001 * k;  // up to t = 0.99
        r.grad_norm = std::pow(1.0 - r.t, -0.5);
        series.push_back(r);
    }
    auto est = detect_blowup(series);
    REQUIRE(est.has_value());
    CHECK(std::abs(est->time - 1.0) < 1e-3);
}

TEST_CASE("detect_blowup declines flat or decreasing series") {
    std::vector<ObservableRecord> series;
    for (int k = 0; k <= 100; ++k) {
        ObservableRecord r;
        r.t = 0.01 * k;
        r.grad_norm = 2.0 / (1.0 + r.t);
        series.push_back(r);
    }
    CHECK_FALSE(detect_blowup(series).has_value());
}

TEST_CASE("resolution guard ends the run gracefully") {
    GroundStateQ q = solve_q(1, -1.0);
    auto g = make_grid(1, 512, 12);
    Field u0 = merle_initial_data(g, q, MerleParams{});
    NonlinearitySpec nl{-1.0, 2.0};
    SolverConfig cfg;
    cfg.dt0 = 5e-4;
    cfg.t_end = 2.0;
    cfg.record_every = 20;
    cfg.adapt = true;
    cfg.grad_ceiling = 1e9;
    cfg.resolution_guard = 0.05;  // ||grad u|| dx stays tiny on healthy runs
    RunOutcome out = evolve(u0, PotentialSpec{}, nl, cfg);
    CHECK(out.status == RunStatus::ResolutionExhausted);
    CHECK(out.t_stop < 2.0);
    CHECK(out.final.finite());
}

TEST_CASE("status names") {
    CHECK(std::string(status_name(RunStatus::Completed)) == "completed");
    CHECK(std::string(status_name(RunStatus::BlowupDetected)) == "blowup_detected");
    CHECK(std::string(status_name(RunStatus::ResolutionExhausted)) ==
          "resolution_exhausted");
}

TEST_CASE("solver config validation") {
    auto g = make_grid(1, 256, 8);
    Field u0 = sample_gaussian(g, ChirpedGaussian{});
    SolverConfig cfg;
    cfg.dt0 = -1e-3;
    CHECK_THROWS(evolve(u0, PotentialSpec{}, NonlinearitySpec{0, 1}, cfg));
    cfg.dt0 = 1e-3;
    cfg.t_end = 0.0;
    CHECK_THROWS(evolve(u0, PotentialSpec{}, NonlinearitySpec{0, 1}, cfg));
}
