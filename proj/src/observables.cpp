#include "nlsq/observables.hpp"
#include "nlsq/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace nlsq {

Real delta_exponent(Real r, int dim) { return dim * (0.5 - 1.0 / r); }

Real energy(const Field& f, const PotentialSpec& pot, const NonlinearitySpec& nl) {
    Norms n = norms(f);
    Real e = 0.5 * n.grad_l2 * n.grad_l2 +
             0.5 * pot.quadratic_coefficient() * n.weighted_x * n.weighted_x;
    if (nl.lambda != 0) {
        const Real p = 2 * nl.sigma + 2;
        e += nl.lambda / (nl.sigma + 1) * std::pow(lp_norm(f, p), p);
    }
    return e;
}

namespace {

std::vector<Field> x_multiply(const Field& f) {
    const Grid& g = *f.grid;
    std::vector<Field> out;
    for (int a = 0; a < g.dim; ++a) {
        CArray v(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            v[i] = g.axis_x[g.unravel(i)[a]] * f.values[i];
        out.emplace_back(f.grid, std::move(v));
    }
    return out;
}

// c1 * chirp(gamma) grad (chirp(-gamma) f), per component.
std::vector<Field> chirped_gradient(const Field& f, Real gamma, Complex c1) {
    Field inner = chirp_multiply(f, -gamma);
    auto grads = spectral_gradient(inner);
    for (auto& comp : grads) {
        comp = chirp_multiply(comp, gamma);
        comp.values *= c1;
    }
    return grads;
}

}  // namespace

std::vector<Field> op_J(const Field& f, Real t, Real omega) {
    if (omega == 0 || t == 0) {
        auto grads = spectral_gradient(f);
        for (auto& comp : grads) comp.values *= Complex(0, 1);
        return grads;
    }
    const Real ch = std::cosh(omega * t);
    const Real th = std::tanh(omega * t);
    return chirped_gradient(f, omega * th, Complex(0, ch));
}

std::vector<Field> op_H(const Field& f, Real t, Real omega) {
    if (t == 0) return x_multiply(f);
    if (omega == 0) {
        // free limit: x + i t grad = i t chirp(1/t) grad chirp(-1/t)
        return chirped_gradient(f, 1 / t, Complex(0, t));
    }
    const Real sh = std::sinh(omega * t);
    const Real coth = std::cosh(omega * t) / sh;
    return chirped_gradient(f, omega * coth, Complex(0, sh / omega));
}

std::vector<Field> op_J_direct(const Field& f, Real t, Real omega) {
    auto grads = spectral_gradient(f);
    auto xs = x_multiply(f);
    const Real sh = omega * std::sinh(omega * t);
    const Real ch = std::cosh(omega * t);
    for (std::size_t a = 0; a < grads.size(); ++a)
        grads[a].values = sh * xs[a].values + Complex(0, ch) * grads[a].values;
    return grads;
}

std::vector<Field> op_H_direct(const Field& f, Real t, Real omega) {
    auto grads = spectral_gradient(f);
    auto xs = x_multiply(f);
    const Real ch = std::cosh(omega * t);
    const Real shw = (omega == 0) ? t : std::sinh(omega * t) / omega;
    for (std::size_t a = 0; a < grads.size(); ++a)
        grads[a].values = ch * xs[a].values + Complex(0, shw) * grads[a].values;
    return grads;
}

std::vector<Field> op_J_confining(const Field& f, Real t, Real omega) {
    auto grads = spectral_gradient(f);
    auto xs = x_multiply(f);
    const Real sn = -omega * std::sin(omega * t);
    const Real cs = std::cos(omega * t);
    for (std::size_t a = 0; a < grads.size(); ++a)
        grads[a].values = sn * xs[a].values + Complex(0, cs) * grads[a].values;
    return grads;
}

std::vector<Field> op_H_confining(const Field& f, Real t, Real omega) {
    auto grads = spectral_gradient(f);
    auto xs = x_multiply(f);
    const Real cs = std::cos(omega * t);
    const Real snw = (omega == 0) ? t : std::sin(omega * t) / omega;
    for (std::size_t a = 0; a < grads.size(); ++a)
        grads[a].values = cs * xs[a].values + Complex(0, snw) * grads[a].values;
    return grads;
}

Real vector_l2(const std::vector<Field>& comps) {
    Real s = 0;
    for (const auto& c : comps) {
        Real v = l2_norm(c);
        s += v * v;
    }
    return std::sqrt(s);
}

Real momentum(const Field& f) {
    // p = Im int conj(f) x . grad f
    auto grads = spectral_gradient(f);
    const Real w = std::pow(f.grid->dx, f.grid->dim);
    Real p = 0;
    const Grid& g = *f.grid;
    for (std::size_t a = 0; a < grads.size(); ++a)
        for (std::size_t i = 0; i < g.size(); ++i)
            p += std::imag(std::conj(f.values[i]) *
                           g.axis_x[g.unravel(i)[static_cast<int>(a)]] *
                           grads[a].values[i]);
    return p * w;
}

std::pair<Real, Real> energy_split(const Field& f, Real t, Real omega,
                                   const NonlinearitySpec& nl) {
    const Real jn = vector_l2(op_J_direct(f, t, omega));
    const Real hn = vector_l2(op_H_direct(f, t, omega));
    const Real ch = std::cosh(omega * t), sh = std::sinh(omega * t);
    Real nlterm = 0;
    if (nl.lambda != 0) {
        const Real p = 2 * nl.sigma + 2;
        nlterm = nl.lambda / (nl.sigma + 1) * std::pow(lp_norm(f, p), p);
    }
    const Real e1 = 0.5 * jn * jn + ch * ch * nlterm;
    const Real e2 = -0.5 * omega * omega * hn * hn - sh * sh * nlterm;
    return {e1, e2};
}

ObservableRecord record_observables(const Field& f, Real t,
                                    const PotentialSpec& pot,
                                    const NonlinearitySpec& nl) {
    ObservableRecord r;
    r.t = t;
    Norms n = norms(f);
    r.mass = n.l2 * n.l2;
    r.grad_norm = n.grad_l2;
    r.variance_y = n.weighted_x * n.weighted_x;
    r.sup_norm = n.linf;
    const Real p = 2 * nl.sigma + 2;
    r.nl_norm = std::pow(lp_norm(f, p), p);
    r.energy = 0.5 * r.grad_norm * r.grad_norm +
               0.5 * pot.quadratic_coefficient() * r.variance_y +
               nl.lambda / (nl.sigma + 1) * r.nl_norm;
    r.momentum_p = momentum(f);
    const Real omega = (pot.kind == PotentialKind::Free) ? 0.0 : pot.omega;
    const Real nlterm = nl.lambda / (nl.sigma + 1) * r.nl_norm;
    if (pot.kind == PotentialKind::Confining) {
        // rotating-frame split: the cross terms of J and H cancel, so
        // e1 + e2 recombines to the conserved energy for the + potential too
        r.j_norm = vector_l2(op_J_confining(f, t, omega));
        r.h_norm = vector_l2(op_H_confining(f, t, omega));
        const Real cs = std::cos(omega * t), sn = std::sin(omega * t);
        r.e1 = 0.5 * r.j_norm * r.j_norm + cs * cs * nlterm;
        r.e2 = 0.5 * omega * omega * r.h_norm * r.h_norm + sn * sn * nlterm;
    } else {
        r.j_norm = vector_l2(op_J_direct(f, t, omega));
        r.h_norm = vector_l2(op_H_direct(f, t, omega));
        const Real ch = std::cosh(omega * t), sh = std::sinh(omega * t);
        r.e1 = 0.5 * r.j_norm * r.j_norm + ch * ch * nlterm;
        r.e2 = -0.5 * omega * omega * r.h_norm * r.h_norm - sh * sh * nlterm;
    }
    return r;
}

Real evolution_law_residual(const std::vector<ObservableRecord>& series,
                            Real omega, const NonlinearitySpec& nl, int dim) {
    if (series.size() < 3)
        throw std::invalid_argument("evolution_law_residual: need >= 3 records");
    const Real h = series[1].t - series[0].t;
    for (std::size_t k = 1; k + 1 < series.size(); ++k) {
        Real hk = series[k + 1].t - series[k].t;
        if (std::abs(hk - h) > 1e-9 * std::max(std::abs(h), Real(1)))
            throw std::invalid_argument("evolution_law_residual: non-uniform sampling");
    }
    const Real coef = omega * nl.lambda / (2 * nl.sigma + 2) * (2 - dim * nl.sigma);
    Real max_abs_rhs = 0;
    for (const auto& r : series)
        max_abs_rhs = std::max(max_abs_rhs,
                               std::abs(coef * std::sinh(2 * omega * r.t) * r.nl_norm));
    const Real scale = std::max(max_abs_rhs, std::abs(series.front().energy) + 1);
    Real worst = 0;
    for (std::size_t k = 1; k + 1 < series.size(); ++k) {
        const Real lhs = (series[k + 1].e1 - series[k - 1].e1) / (2 * h);
        const Real rhs = coef * std::sinh(2 * omega * series[k].t) * series[k].nl_norm;
        worst = std::max(worst, std::abs(lhs - rhs) / (std::abs(rhs) + scale));
    }
    return worst;
}

std::vector<Real> virial_closed_form(const std::vector<ObservableRecord>& series,
                                     Real omega, const NonlinearitySpec& nl,
                                     int dim) {
    if (series.size() < 2)
        throw std::invalid_argument("virial_closed_form: need >= 2 records");
    const Real h = series[1].t - series[0].t;
    for (std::size_t k = 1; k + 1 < series.size(); ++k)
        if (std::abs(series[k + 1].t - series[k].t - h) >
            1e-9 * std::max(std::abs(h), Real(1)))
            throw std::invalid_argument("virial_closed_form: non-uniform sampling");

    const Real y0 = series.front().variance_y;
    const Real ydot0 = 2 * series.front().momentum_p;
    const Real t0 = series.front().t;
    auto forcing = [&](const ObservableRecord& r) {
        return 4 * r.energy -
               2 * nl.lambda / (nl.sigma + 1) * (2 - dim * nl.sigma) * r.nl_norm;
    };
    const bool tiny_omega = std::abs(omega) < 1e-12;
    auto kernel = [&](Real dt) {
        return tiny_omega ? dt : std::sinh(2 * omega * dt) / (2 * omega);
    };
    std::vector<Real> pred(series.size());
    for (std::size_t k = 0; k < series.size(); ++k) {
        const Real t = series[k].t - t0;
        Real hom = tiny_omega
                       ? y0 + ydot0 * t
                       : y0 * std::cosh(2 * omega * t) +
                             ydot0 * std::sinh(2 * omega * t) / (2 * omega);
        Real conv = 0;  // trapezoid over s in [t0, t_k]
        for (std::size_t j = 0; j + 1 <= k; ++j) {
            const Real fa = kernel(t - (series[j].t - t0)) * forcing(series[j]);
            const Real fb = kernel(t - (series[j + 1].t - t0)) * forcing(series[j + 1]);
            conv += 0.5 * h * (fa + fb);
        }
        pred[k] = hom + conv;
    }
    return pred;
}

Real gn_check(const Field& f, Real t, Real omega, Real r, Real c_r) {
    const int n = f.grid->dim;
    if (r < 2 || (n >= 3 && !(r < 2.0 * n / (n - 2))))
        throw std::invalid_argument("gn_check: invalid exponent r");
    const Real d = delta_exponent(r, n);
    const Real l2 = l2_norm(f);
    const Real jn = vector_l2(op_J_direct(f, t, omega));
    const Real bound = c_r * std::pow(std::cosh(omega * t), -d) *
                       std::pow(l2, 1 - d) * std::pow(jn, d);
    return bound - lp_norm(f, r);
}

}  // namespace nlsq
