#include "nlsq/transforms.hpp"

#include "nlsq/observables.hpp"
#include "nlsq/solver.hpp"
#include "nlsq/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace nlsq {

Real lens_time_repulsive(Real t, Real omega) {
    return omega == 0 ? t : std::tanh(omega * t) / omega;
}

Real lens_time_confining(Real t, Real omega) {
    return omega == 0 ? t : std::tan(omega * t) / omega;
}

Real lens_coupling_factor(Real s, Real omega, Real sigma, int dim) {
    const Real u = 1 - omega * omega * s * s;
    if (!(u > 0))
        throw std::invalid_argument("lens_coupling_factor: |s| >= 1/omega");
    return std::pow(u, (dim * sigma - 2) / 2);
}

Field lens_repulsive(const Field& v, Real t, Real omega) {
    if (!(omega > 0)) throw std::invalid_argument("lens_repulsive: omega <= 0");
    const Real ch = std::cosh(omega * t);
    const Real th = std::tanh(omega * t);
    ResampleResult r = resample(v, ch);
    Field u = chirp_multiply(r.field, omega * th);
    u.values *= std::pow(ch, -v.grid->dim / 2.0);
    return u;
}

Field lens_confining(const Field& v, Real t, Real omega) {
    if (!(omega > 0)) throw std::invalid_argument("lens_confining: omega <= 0");
    if (!(std::abs(t) < M_PI / (2 * omega)))
        throw std::invalid_argument("lens_confining: |t| >= pi/(2 omega)");
    const Real c = std::cos(omega * t);
    const Real tn = std::tan(omega * t);
    ResampleResult r = resample(v, c);
    Field u = chirp_multiply(r.field, -omega * tn);
    u.values *= std::pow(c, -v.grid->dim / 2.0);
    return u;
}

Real j_norm_identity_check(const Field& v, Real omega, Real t) {
    Field u = lens_repulsive(v, t, omega);
    const Real jn = vector_l2(op_J_direct(u, t, omega));
    const Real gn = vector_l2(spectral_gradient(v));
    if (gn == 0) throw std::invalid_argument("j_norm_identity_check: zero gradient");
    return std::abs(jn - gn) / gn;
}

Field scattering_extract(const Field& u, Real t, Real omega) {
    if (t == 0) return u;
    return schrodinger_group(u, -t, omega);
}

Real sigma_distance(const Field& a, const Field& b) {
    if (a.grid != b.grid && (a.grid->dim != b.grid->dim ||
                             a.grid->pts != b.grid->pts ||
                             a.grid->half_width != b.grid->half_width))
        throw GridError("sigma_distance: mismatched grids");
    Field d{a.grid, a.values - b.values};
    Norms n = norms(d);
    return n.l2 + n.grad_l2 + n.weighted_x;
}

ScatteringTrace scattering_monitor(const std::vector<Field>& states,
                                   const std::vector<Real>& times, Real omega) {
    if (states.size() != times.size() || states.size() < 2)
        throw std::invalid_argument("scattering_monitor: need >= 2 matched states");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1]) || !(times[k - 1] > 0))
            throw std::invalid_argument("scattering_monitor: times not positive increasing");
    ScatteringTrace tr;
    std::vector<Field> extracted;
    extracted.reserve(states.size());
    for (std::size_t k = 0; k < states.size(); ++k)
        extracted.push_back(scattering_extract(states[k], times[k], omega));
    for (std::size_t k = 1; k < extracted.size(); ++k) {
        tr.times.push_back(times[k]);
        tr.distances.push_back(sigma_distance(extracted[k], extracted[k - 1]));
    }
    return tr;
}

LensScatteringResult lens_frame_scattering(const Field& u0, Real omega,
                                           const NonlinearitySpec& nl,
                                           const std::vector<Real>& times,
                                           Real dt0) {
    if (!(omega > 0))
        throw std::invalid_argument("lens_frame_scattering: omega <= 0");
    if (times.empty())
        throw std::invalid_argument("lens_frame_scattering: no sample times");
    const int dim = u0.grid->dim;

    LensScatteringResult out;
    Field v = u0;  // v(0) = u(0)
    Real s_prev = 0, t_prev = 0;
    for (Real t : times) {
        if (!(t > t_prev))
            throw std::invalid_argument("lens_frame_scattering: times must increase");
        t_prev = t;
        const Real s = lens_time_repulsive(t, omega);
        SolverConfig cfg;
        cfg.dt0 = dt0;
        cfg.t_end = s - s_prev;
        cfg.record_every = 1 << 30;
        cfg.adapt = true;
        cfg.grad_ceiling = 1e12;
        const Real s0 = s_prev;
        cfg.lambda_scale = [=](Real local) {
            return lens_coupling_factor(s0 + local, omega, nl.sigma, dim);
        };
        PotentialSpec free_pot{PotentialKind::Free, 0};
        RunOutcome seg = evolve(v, free_pot, nl, cfg);
        if (seg.status != RunStatus::Completed)
            throw std::runtime_error("lens_frame_scattering: free-frame run failed");
        v = seg.final;
        out.extracted.push_back(scattering_extract(v, s, 0));
        s_prev = s;
    }
    for (std::size_t k = 1; k < out.extracted.size(); ++k) {
        out.trace.times.push_back(times[k]);
        out.trace.distances.push_back(
            sigma_distance(out.extracted[k], out.extracted[k - 1]));
    }
    return out;
}

}  // namespace nlsq
