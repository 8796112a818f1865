#pragma once

#include "nlsq/grid.hpp"
#include "nlsq/observables.hpp"
#include "nlsq/propagators.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace nlsq {

struct SolverConfig {
    Real dt0 = 1e-3;
    Real t_end = 1;        // negative: evolve backward
    int record_every = 10;  // steps between observable records
    bool adapt = false;     // shrink dt as the gradient norm grows
    Real grad_ceiling = 0;      // 0 -> 10^3 x initial ||grad u||
    Real resolution_guard = 0;  // threshold on ||grad u|| * dx; 0 -> off
    // Optional time-dependent rescaling of nl.lambda (used by the lens-frame
    // runs, where the effective coupling depends on time).
    std::function<Real(Real)> lambda_scale;
};

enum class RunStatus { Completed, BlowupDetected, ResolutionExhausted };

struct RunOutcome {
    RunStatus status = RunStatus::Completed;
    Real t_stop = 0;  // detection time; equals t_end when completed
    std::vector<ObservableRecord> series;
    Field final;
};

// One second-order splitting step: half phase, full kinetic, half phase.
Field strang_step(const Field& f, Real dt, const PotentialSpec& pot,
                  const NonlinearitySpec& nl);

RunOutcome evolve(const Field& u0, const PotentialSpec& pot,
                  const NonlinearitySpec& nl, const SolverConfig& cfg);

struct BlowupEstimate {
    Real time;      // fitted singularity time
    Real residual;  // rms misfit of the power-law fit (log scale)
};

// Fits c*(T-t)^{-alpha} to the last decade of gradient-norm growth.
std::optional<BlowupEstimate> detect_blowup(
    const std::vector<ObservableRecord>& series);

const char* status_name(RunStatus s);

}  // namespace nlsq
