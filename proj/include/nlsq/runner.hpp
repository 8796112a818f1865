#pragma once

#include "nlsq/config.hpp"
#include "nlsq/solver.hpp"

#include <string>

namespace nlsq {

// Builds the grid and initial state of a config. For snapshot inputs t0 is
// the stored time; otherwise 0.
Field build_initial(const RunConfig& cfg, Real& t0);

// Single run: CSV of observables + final snapshot into out_dir.
// Returns the scientific exit code: 0 completed, 2 blow-up detected,
// 3 resolution exhausted.
int run_command(const RunConfig& cfg, const std::string& out_dir);

// Cartesian sweep over the configured axes (at most 2); one sub-directory
// per run plus summary.csv. Runs execute concurrently on `jobs` threads.
int sweep_command(const RunConfig& cfg, const std::string& out_dir, int jobs);

// CSV of classical ray trajectories for a fan of starting points.
int rays_command(const RunConfig& cfg, const std::string& out_dir);

// Computes the ground state and exports profile CSV + sampled snapshot.
int groundstate_command(const RunConfig& cfg, const std::string& out_dir);

// Lens-transform coherence checks; prints one pass/fail line per check.
int transform_check_command(const std::string& out_dir);

// Scattering monitor for a repulsive run (free-frame route).
int scatter_command(const RunConfig& cfg, const std::string& out_dir);

}  // namespace nlsq
