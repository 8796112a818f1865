#pragma once

#include "nlsq/grid.hpp"
#include "nlsq/groundstate.hpp"
#include "nlsq/propagators.hpp"
#include "nlsq/solver.hpp"

#include <string>
#include <vector>

namespace nlsq {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class InitKind { Gaussian, Merle, Snapshot };

struct InitSpec {
    InitKind kind = InitKind::Gaussian;
    ChirpedGaussian gauss;
    MerleParams merle;
    std::string snapshot_path;
};

struct SweepAxis {
    std::string parameter;
    std::vector<Real> values;
};

struct RaySpec {
    PotentialKind kind = PotentialKind::Free;
    Real chirp = 1;    // b of the chirped families
    Real offset = 0;   // t0 of the shifted confining family
    int fan = 9;       // number of x0 values, symmetric about 0
    Real x0_max = 4;
    Real t_max = 2;
    int samples = 200;
};

struct RunConfig {
    int grid_n = 1;
    int grid_m = 256;
    Real grid_L = 16;
    PotentialSpec pot{PotentialKind::Free, 1};
    NonlinearitySpec nl{0, 1};
    SolverConfig solver;
    InitSpec init;
    RaySpec rays;
    int gs_n = 1;          // groundstate subcommand
    Real gs_lambda = -1;
    std::string output_csv = "observables.csv";
    std::string output_snapshot = "final.snap";
    std::vector<SweepAxis> sweep;
    int sweep_cap = 64;
};

// Line-oriented "key = value" text; '#' starts a comment. Unknown keys are
// errors naming the key and line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Assign one schema parameter by dotted name (used by sweeps).
void set_parameter(RunConfig& cfg, const std::string& name, Real value);

}  // namespace nlsq
