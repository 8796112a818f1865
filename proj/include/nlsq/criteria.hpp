#pragma once

#include "nlsq/grid.hpp"
#include "nlsq/propagators.hpp"

#include <optional>
#include <string>

namespace nlsq {

// Exponent bookkeeping for the L^2-critical local theory.
struct AdmissiblePair {
    Real q;      // time exponent
    Real r;      // space exponent, here r = 2*sigma + 2
    Real delta;  // n*(1/2 - 1/r)
    Real k;      // auxiliary time exponent of the nonlinear estimate
};

// Valid for sigma < 2/(n-2) (any sigma > 0 when n <= 2).
AdmissiblePair lemma28_exponents(Real sigma, int dim);

// Continuity-argument bound: if h(t) <= a + b*h(t)^theta with h(0) <= a and
// theta > 1, and a is small enough, then h stays below theta*a/(theta-1).
// Returns nullopt when the smallness condition fails.
std::optional<Real> bootstrap_bound(Real a, Real b, Real theta, Real h0);

enum class BlowupVerdict { Both, Future, Past, Inconclusive };

// Sufficient condition for finite-time blow-up from initial data with a
// repulsive potential. Uses only norms of the data; defocusing or linear
// couplings can never satisfy the condition and come back inconclusive.
BlowupVerdict blowup_classifier(const Field& u0, Real omega,
                                const NonlinearitySpec& nl);

struct TimeMap {
    bool global;  // repulsive case only: no finite blow-up time
    Real time;    // mapped blow-up time when !global
};

// Map a free-equation blow-up time T to the blow-up time with the
// quadratic potential of the given kind.
TimeMap blowup_time_map(Real T, Real omega, PotentialKind kind);

// Smallest omega for which the repulsive potential removes the blow-up of
// a reference solution blowing up at T_star under strength omega_star.
// omega_star = 0 means a free reference (threshold 1/T_star).
Real omega_threshold(Real omega_star, Real T_star);

// Blow-up time when omega is below omega_threshold(omega_star, T_star).
Real subthreshold_blowup_time(Real omega_star, Real T_star, Real omega);

const char* verdict_name(BlowupVerdict v);

}  // namespace nlsq
