#include "nlsq/solver.hpp"

#include "nlsq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlsq {

Field strang_step(const Field& f, Real dt, const PotentialSpec& pot,
                  const NonlinearitySpec& nl) {
    Field g = phase_step(f, dt / 2, pot, nl);
    g = kinetic_step(g, dt);
    return phase_step(g, dt / 2, pot, nl);
}

namespace {

Real grad_l2(const Field& f) {
    Real s = 0;
    for (const auto& c : spectral_gradient(f)) {
        const Real v = l2_norm(c);
        s += v * v;
    }
    return std::sqrt(s);
}

}  // namespace

RunOutcome evolve(const Field& u0, const PotentialSpec& pot,
                  const NonlinearitySpec& nl, const SolverConfig& cfg) {
    pot.validate();
    nl.validate(u0.grid->dim);
    if (!(cfg.dt0 > 0)) throw std::invalid_argument("evolve: dt0 must be > 0");
    if (cfg.t_end == 0) throw std::invalid_argument("evolve: t_end must be nonzero");
    if (cfg.record_every < 1)
        throw std::invalid_argument("evolve: record_every must be >= 1");
    if (!u0.finite()) throw std::invalid_argument("evolve: non-finite initial data");

    const Real dir = cfg.t_end > 0 ? 1 : -1;
    const Real horizon = std::abs(cfg.t_end);
    const Real g0 = grad_l2(u0);
    const Real ceiling = cfg.grad_ceiling > 0 ? cfg.grad_ceiling : 1e3 * g0;
    const Real guard = cfg.resolution_guard > 0
                           ? cfg.resolution_guard
                           : std::numeric_limits<Real>::infinity();
    const Real adapt_scale = g0 * g0;

    auto scaled_nl = [&](Real t) {
        NonlinearitySpec s = nl;
        if (cfg.lambda_scale) s.lambda *= cfg.lambda_scale(t);
        return s;
    };

    RunOutcome out;
    out.final = u0;
    out.series.push_back(record_observables(u0, 0, pot, scaled_nl(0)));

    Real tau = 0;  // elapsed |time|
    long step = 0;
    Real g = g0;
    while (tau < horizon) {
        Real dt = cfg.dt0;
        if (cfg.adapt) {
            dt *= std::min(Real(1), adapt_scale / (g * g));
            if (cfg.lambda_scale)
                dt /= std::max(Real(1), std::abs(cfg.lambda_scale(dir * tau)));
        }
        dt = std::min(dt, horizon - tau);

        Field next = out.final;
        if (cfg.lambda_scale) {
            // endpoint-sampled coupling keeps second order for the
            // time-dependent term
            next = phase_step(next, dir * dt / 2, pot, scaled_nl(dir * tau));
            next = kinetic_step(next, dir * dt);
            next = phase_step(next, dir * dt / 2, pot, scaled_nl(dir * (tau + dt)));
        } else {
            next = strang_step(next, dir * dt, pot, nl);
        }
        tau += dt;
        ++step;

        if (!next.finite()) {
            out.status = RunStatus::ResolutionExhausted;
            out.t_stop = dir * (tau - dt);
            return out;
        }
        out.final = std::move(next);
        g = grad_l2(out.final);

        const bool at_end = tau >= horizon;
        const bool hit_ceiling = g > ceiling;
        const bool hit_guard = g * u0.grid->dx > guard;
        if (step % cfg.record_every == 0 || at_end || hit_ceiling || hit_guard) {
            const Real t = dir * tau;
            if (out.series.back().t != t)
                out.series.push_back(
                    record_observables(out.final, t, pot, scaled_nl(t)));
        }
        if (hit_ceiling) {
            out.status = RunStatus::BlowupDetected;
            out.t_stop = dir * tau;
            return out;
        }
        if (hit_guard) {
            out.status = RunStatus::ResolutionExhausted;
            out.t_stop = dir * tau;
            return out;
        }
    }
    out.status = RunStatus::Completed;
    out.t_stop = cfg.t_end;
    return out;
}

std::optional<BlowupEstimate> detect_blowup(
    const std::vector<ObservableRecord>& series) {
    if (series.size() < 5) return std::nullopt;
    // work on |t| so backward runs can be fed directly
    std::vector<Real> t, g;
    for (const auto& r : series) {
        t.push_back(std::abs(r.t));
        g.push_back(r.grad_norm);
    }
    const Real g_end = g.back();
    Real g_min = g.front();
    for (Real v : g) g_min = std::min(g_min, v);
    if (!(g_end >= 3 * g_min)) return std::nullopt;  // no sustained growth

    // last decade of growth
    std::size_t start = 0;
    for (std::size_t k = g.size(); k-- > 0;) {
        if (g[k] < g_end / 10) {
            start = k + 1;
            break;
        }
    }
    if (g.size() - start < 5) start = g.size() >= 8 ? g.size() - 8 : 0;
    if (g.size() - start < 4) return std::nullopt;

    const Real t_last = t.back();
    const Real span = std::max(t_last - t[start], Real(1e-12));

    // least-squares residual of ln g = ln c - alpha ln(T - t) for given T
    auto misfit = [&](Real T) {
        Real sx = 0, sy = 0, sxx = 0, sxy = 0;
        const Real n = Real(g.size() - start);
        for (std::size_t k = start; k < g.size(); ++k) {
            const Real x = std::log(T - t[k]);
            const Real y = std::log(g[k]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const Real denom = n * sxx - sx * sx;
        if (std::abs(denom) < 1e-300) return std::numeric_limits<Real>::infinity();
        const Real slope = (n * sxy - sx * sy) / denom;
        const Real icept = (sy - slope * sx) / n;
        Real sse = 0;
        for (std::size_t k = start; k < g.size(); ++k) {
            const Real e = std::log(g[k]) - icept - slope * std::log(T - t[k]);
            sse += e * e;
        }
        return std::sqrt(sse / n);
    };

    // golden-section search on log(T - t_last)
    const Real phi = 0.5 * (std::sqrt(Real(5)) - 1);
    Real lo = std::log(1e-6 * span), hi = std::log(10 * span);
    Real x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    Real f1 = misfit(t_last + std::exp(x1)), f2 = misfit(t_last + std::exp(x2));
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = misfit(t_last + std::exp(x1));
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = misfit(t_last + std::exp(x2));
        }
    }
    const Real T = t_last + std::exp(0.5 * (lo + hi));
    return BlowupEstimate{T, misfit(T)};
}

const char* status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Completed: return "completed";
        case RunStatus::BlowupDetected: return "blowup_detected";
        default: return "resolution_exhausted";
    }
}

}  // namespace nlsq
