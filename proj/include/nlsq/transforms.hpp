#pragma once

#include "nlsq/grid.hpp"
#include "nlsq/propagators.hpp"

#include <vector>

namespace nlsq {

// u(t,x) = cosh(wt)^{-n/2} e^{i w |x|^2 tanh(wt)/2} v(tanh(wt)/w, x/cosh(wt)).
// The caller passes v already evaluated at the matched time tanh(wt)/w.
Field lens_repulsive(const Field& v, Real t, Real omega);

// u(t,x) = cos(wt)^{-n/2} e^{-i w |x|^2 tan(wt)/2} v(tan(wt)/w, x/cos(wt)),
// valid for |t| < pi/(2w).
Field lens_confining(const Field& v, Real t, Real omega);

// Map t to the matched time of the free frame.
Real lens_time_repulsive(Real t, Real omega);  // tanh(wt)/w
Real lens_time_confining(Real t, Real omega);  // tan(wt)/w

// Effective coupling factor of the free-frame equation at free time s:
// lambda_eff(s) = lambda * (1 - w^2 s^2)^{(n sigma - 2)/2}. Equals lambda
// for the critical power sigma = 2/n.
Real lens_coupling_factor(Real s, Real omega, Real sigma, int dim);

// |  ||J(t) u|| - ||grad v||  | / ||grad v||  for u built by lens_repulsive
// from v at the matched time.
Real j_norm_identity_check(const Field& v, Real omega, Real t);

// Asymptotic-state candidate U(-t) u(t) (exact linear inversion).
Field scattering_extract(const Field& u, Real t, Real omega);

struct ScatteringTrace {
    std::vector<Real> times;      // t_1 < t_2 < ...
    std::vector<Real> distances;  // Sigma-distance of consecutive extractions
};

Real sigma_distance(const Field& a, const Field& b);

// Consecutive Sigma-distances of extracted states u_k = U(-t_k) u(t_k).
ScatteringTrace scattering_monitor(const std::vector<Field>& states,
                                   const std::vector<Real>& times, Real omega);

struct LensScatteringResult {
    ScatteringTrace trace;
    std::vector<Field> extracted;  // U(-t_k) u(t_k), one per requested time
};

// Long-horizon scattering monitor for the repulsive equation, computed in
// the free frame: v solves the free equation with coupling
// lambda * lens_coupling_factor(s), and U(-t)u(t) equals the free-group
// inversion of v at s = tanh(wt)/w. Avoids gridding the exponentially
// spreading physical-frame solution.
LensScatteringResult lens_frame_scattering(const Field& u0, Real omega,
                                           const NonlinearitySpec& nl,
                                           const std::vector<Real>& times,
                                           Real dt0);

}  // namespace nlsq
