#include "nlsq/criteria.hpp"
#include "nlsq/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace nlsq {

AdmissiblePair lemma28_exponents(Real sigma, int dim) {
    if (sigma <= 0) throw std::invalid_argument("lemma28_exponents: sigma <= 0");
    if (dim >= 3 && !(sigma < 2.0 / (dim - 2)))
        throw std::invalid_argument("lemma28_exponents: sigma too large for dim");
    AdmissiblePair p;
    p.r = 2 * sigma + 2;
    p.delta = delta_exponent(p.r, dim);
    p.q = 2.0 / p.delta;
    p.k = 2 * sigma * (2 * sigma + 2) / (2 - (dim - 2) * sigma);
    return p;
}

std::optional<Real> bootstrap_bound(Real a, Real b, Real theta, Real h0) {
    if (!(theta > 1) || a <= 0 || b <= 0)
        throw std::invalid_argument("bootstrap_bound: need theta > 1, a, b > 0");
    const Real m0 = std::pow(theta * b, -1.0 / (theta - 1));
    if (!(a < (1 - 1 / theta) * m0)) return std::nullopt;
    if (!(h0 <= m0)) return std::nullopt;
    return theta * a / (theta - 1);
}

BlowupVerdict blowup_classifier(const Field& u0, Real omega,
                                const NonlinearitySpec& nl) {
    const int n = u0.grid->dim;
    if (!(n * nl.sigma >= 2))
        throw std::invalid_argument("blowup_classifier: needs n*sigma >= 2");
    Norms nm = norms(u0);
    const Real pnl = 2 * nl.sigma + 2;
    const Real a = 0.5 * nm.grad_l2 * nm.grad_l2 +
                   nl.lambda / (nl.sigma + 1) * std::pow(lp_norm(u0, pnl), pnl);
    const Real b = -0.5 * omega * omega * nm.weighted_x * nm.weighted_x;
    const Real p0 = momentum(u0);
    if (a < b - omega * std::abs(p0)) return BlowupVerdict::Both;
    if (a < b) {
        if (p0 == 0) return BlowupVerdict::Both;
        return p0 < 0 ? BlowupVerdict::Future : BlowupVerdict::Past;
    }
    return BlowupVerdict::Inconclusive;
}

TimeMap blowup_time_map(Real T, Real omega, PotentialKind kind) {
    if (!(T > 0) || !(omega > 0))
        throw std::invalid_argument("blowup_time_map: need T, omega > 0");
    TimeMap m{false, 0};
    switch (kind) {
        case PotentialKind::Free:
            m.time = T;
            break;
        case PotentialKind::Confining:
            m.time = std::atan(omega * T) / omega;
            break;
        case PotentialKind::Repulsive:
            if (omega * T >= 1) {
                m.global = true;
            } else {
                m.time = std::atanh(omega * T) / omega;
            }
            break;
    }
    return m;
}

Real omega_threshold(Real omega_star, Real T_star) {
    if (!(T_star > 0) || omega_star < 0)
        throw std::invalid_argument("omega_threshold: need T_star > 0, omega_star >= 0");
    if (omega_star == 0) return 1 / T_star;
    return omega_star / std::tanh(omega_star * T_star);
}

Real subthreshold_blowup_time(Real omega_star, Real T_star, Real omega) {
    if (!(omega > 0) || !(omega < omega_threshold(omega_star, T_star)))
        throw std::invalid_argument("subthreshold_blowup_time: omega out of range");
    const Real tanh_ref =
        (omega_star == 0) ? T_star : std::tanh(omega_star * T_star) / omega_star;
    return std::atanh(omega * tanh_ref) / omega;
}

const char* verdict_name(BlowupVerdict v) {
    switch (v) {
        case BlowupVerdict::Both: return "both";
        case BlowupVerdict::Future: return "future";
        case BlowupVerdict::Past: return "past";
        default: return "inconclusive";
    }
}

}  // namespace nlsq
