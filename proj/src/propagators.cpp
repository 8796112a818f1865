#include "nlsq/propagators.hpp"
#include "nlsq/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace nlsq {

void PotentialSpec::validate() const {
    if (kind != PotentialKind::Free && !(omega > 0))
        throw std::invalid_argument("potential requires omega > 0");
}

void NonlinearitySpec::validate(int dim) const {
    if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
    if (dim >= 3 && !(sigma < 2.0 / (dim - 2)))
        throw std::invalid_argument("sigma violates the subcritical bound 2/(n-2)");
}

Field kinetic_step(const Field& f, Real dt) {
    return apply_spectral_multiplier(
        f, [dt](Real xi2) { return std::exp(Complex(0, -0.5 * xi2 * dt)); });
}

Field phase_step(const Field& f, Real dt, const PotentialSpec& pot,
                 const NonlinearitySpec& nl) {
    const Grid& g = *f.grid;
    const Real vc = pot.quadratic_coefficient();
    CArray v = f.values;
    if (nl.lambda == 0) {
        if (vc == 0) return f;
        for (std::size_t i = 0; i < g.size(); ++i)
            v[i] *= std::exp(Complex(0, -0.5 * vc * g.x_squared(i) * dt));
    } else {
        for (std::size_t i = 0; i < g.size(); ++i) {
            Real amp2 = std::norm(v[i]);
            Real nlin = nl.lambda * std::pow(amp2, nl.sigma);
            v[i] *= std::exp(Complex(0, -(0.5 * vc * g.x_squared(i) + nlin) * dt));
        }
    }
    return Field(f.grid, std::move(v));
}

namespace {

// Both linear groups act as a chirp / scaled Fourier transform / chirp with
// parameters (alpha, s, tau, gamma, prefactor). For the repulsive sign:
//   alpha = omega coth(omega t), s = omega / sinh(omega t),
//   tau = sinh(omega t)/omega, gamma = omega tanh(omega t / 2);
// confining uses the trigonometric counterparts. omega = 0 is the free limit.
struct KernelParams {
    Real alpha, s, tau, gamma;
    Real abs_b;  // |sinh(omega t)/omega| resp. |sin(omega t)/omega|
};

KernelParams kernel_params(Real t, Real omega, PotentialKind kind) {
    KernelParams p{};
    if (kind == PotentialKind::Confining) {
        const Real sn = std::sin(omega * t), cs = std::cos(omega * t);
        p.alpha = omega * cs / sn;
        p.s = omega / sn;
        p.tau = sn / omega;
        p.gamma = -omega * std::tan(0.5 * omega * t);
        p.abs_b = std::abs(p.tau);
    } else if (omega == 0) {
        p.alpha = 1 / t;
        p.s = 1 / t;
        p.tau = t;
        p.gamma = 0;
        p.abs_b = std::abs(t);
    } else {
        const Real sh = std::sinh(omega * t), ch = std::cosh(omega * t);
        p.alpha = omega * ch / sh;
        p.s = omega / sh;
        p.tau = sh / omega;
        p.gamma = omega * (ch - 1) / sh;  // omega tanh(omega t / 2)
        p.abs_b = std::abs(p.tau);
    }
    return p;
}

Complex group_prefactor(int dim, Real t, Real abs_b) {
    const Real sgn = (t > 0) ? 1.0 : -1.0;
    const Real mag = std::pow(2 * M_PI * abs_b, -0.5 * dim);
    return mag * std::exp(Complex(0, -dim * M_PI / 4 * sgn));
}

// Scaled Fourier transform G(x_k) = dx^n sum_j exp(-i s x_k . x_j) g_j,
// evaluated per axis with the chirp-Z transform.
Field scaled_fourier(const Field& f, Real s) {
    const Grid& g = *f.grid;
    const int m = g.pts;
    const Real L = g.half_width;
    CArray data = f.values;
    const Real u0 = -s * (-L);
    const Real du = -s * g.dx;
    const Real v0 = -L;
    const Real dv = g.dx;
    CArray line(m);
    for (int a = 0; a < g.dim; ++a) {
        std::size_t stride = 1;
        for (int ax = g.dim - 1; ax > a; --ax) stride *= m;
        const std::size_t block = stride * m;
        for (std::size_t base = 0; base < g.size(); base += block)
            for (std::size_t off = 0; off < stride; ++off) {
                for (int k = 0; k < m; ++k) line[k] = data[base + off + k * stride];
                CArray h = czt(line, u0, du, v0, dv);
                for (int k = 0; k < m; ++k) data[base + off + k * stride] = h[k];
            }
    }
    data *= std::pow(g.dx, g.dim);
    return Field(f.grid, std::move(data));
}

// Chirp-accuracy limit of the quadrature route: images of the sampled kernel
// appear at spacing 2 pi / (|s| dx); keep them at least two box widths away.
bool czt_route_safe(const Grid& g, Real s) {
    return std::abs(s) <= M_PI * g.pts / (4 * g.half_width * g.half_width);
}

Field apply_group(const Field& f, Real t, Real omega, PotentialKind kind) {
    if (t == 0) return f;
    const Grid& g = *f.grid;
    const KernelParams p = kernel_params(t, omega, kind);
    if (czt_route_safe(g, p.s)) {
        // chirp -> scaled Fourier transform -> chirp, the Mehler kernel
        // written out literally.
        Field u = chirp_multiply(f, p.alpha);
        u = scaled_fourier(u, p.s);
        u = chirp_multiply(u, p.alpha);
        u.values *= group_prefactor(g.dim, t, p.abs_b);
        return u;
    }
    // Small-time factorization: chirp -> exact spectral kinetic flow ->
    // chirp. Ghost-free for any t, bandwidth-limited by gamma L.
    Field u = chirp_multiply(f, p.gamma);
    u = kinetic_step(u, p.tau);
    return chirp_multiply(u, p.gamma);
}

}  // namespace

Field schrodinger_group(const Field& f, Real t, Real omega) {
    if (t == 0) return f;
    if (omega < 0) throw std::invalid_argument("schrodinger_group: omega >= 0");
    return apply_group(f, t, omega, PotentialKind::Repulsive);
}

Field mehler_repulsive(const Field& f, Real t, Real omega) {
    if (t == 0) throw std::invalid_argument("mehler_repulsive: t must be nonzero");
    if (!(omega > 0)) throw std::invalid_argument("mehler_repulsive: omega > 0");
    return apply_group(f, t, omega, PotentialKind::Repulsive);
}

Field mehler_confining(const Field& f, Real t, Real omega) {
    if (t == 0) throw std::invalid_argument("mehler_confining: t must be nonzero");
    if (!(omega > 0)) throw std::invalid_argument("mehler_confining: omega > 0");
    // The kernel is singular at the focus; the validity interval is open.
    if (std::abs(t) >= M_PI / (2 * omega) - 1e-6 / omega)
        throw std::invalid_argument("mehler_confining: |t| must be < pi/(2 omega)");
    return apply_group(f, t, omega, PotentialKind::Confining);
}

Field mehler_quadrature_oracle(const Field& f, Real t, Real omega,
                               PotentialKind kind) {
    if (t == 0) throw std::invalid_argument("oracle: t must be nonzero");
    const Grid& g = *f.grid;
    if (g.dim != 1) throw std::invalid_argument("oracle: 1D only");
    if (g.pts > 4096) throw std::invalid_argument("oracle: m <= 4096");
    if (kind == PotentialKind::Confining &&
        std::abs(t) >= M_PI / (2 * omega) - 1e-6 / omega)
        throw std::invalid_argument("oracle: |t| must be < pi/(2 omega)");

    const KernelParams p = kernel_params(t, omega == 0 ? 0 : omega, kind);
    const Complex pref = group_prefactor(1, t, p.abs_b) * g.dx;
    const int m = g.pts;
    CArray out(m);
    for (int k = 0; k < m; ++k) {
        const Real x = g.axis_x[k];
        Complex acc = 0;
        for (int j = 0; j < m; ++j) {
            const Real y = g.axis_x[j];
            acc += std::exp(Complex(0, 0.5 * p.alpha * (x * x + y * y) - p.s * x * y)) *
                   f.values[j];
        }
        out[k] = pref * acc;
    }
    return Field(f.grid, std::move(out));
}

Real dispersion_check(const Field& f, Real t, Real omega) {
    if (t == 0) throw std::invalid_argument("dispersion_check: t must be nonzero");
    Field u = schrodinger_group(f, t, omega);
    const Real sup = u.values.abs().maxCoeff();
    const Real l1 = l1_norm(f);
    return sup * std::pow(std::abs(2 * M_PI * t), 0.5 * f.grid->dim) / l1;
}

Real mehler_chirp_excess(const Grid& g, Real t, Real omega, PotentialKind kind) {
    const KernelParams p = kernel_params(t, omega, kind);
    const Real edge_freq = std::abs(p.alpha) * g.half_width;
    const Real nyquist = (g.pts / 2) * M_PI / g.half_width;
    return edge_freq / nyquist;
}

Real ray_free(Real x0, Real b, Real t) { return x0 * (1 + b * t); }

Real ray_confining(Real x0, Real omega, Real t0, Real t) {
    if (!(std::abs(t0) < M_PI / (2 * omega)))
        throw std::invalid_argument("ray_confining: |t0| < pi/(2 omega) required");
    return x0 * std::cos(omega * (t + t0)) / std::cos(omega * t0);
}

Real ray_repulsive(Real x0, Real omega, Real b, Real t) {
    return x0 * (std::cosh(omega * t) - b * std::sinh(omega * t));
}

}  // namespace nlsq
