#include "nlsq/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace nlsq {

namespace {

constexpr Real kSqrt2 = 1.4142135623730951;

// ---- n = 1 -----------------------------------------------------------
// Q'' = 2Q - 2Q^5, even solution; shoot on Q(0). Undershoot (orbit turns
// around while positive) vs overshoot (crosses zero).

struct ShotState {
    Real q, p;
};

inline void rk4_step(ShotState& s, Real h) {
    auto f = [](ShotState y) {
        return ShotState{y.p, 2 * y.q - 2 * y.q * y.q * y.q * y.q * y.q};
    };
    ShotState k1 = f(s);
    ShotState k2 = f({s.q + 0.5 * h * k1.q, s.p + 0.5 * h * k1.p});
    ShotState k3 = f({s.q + 0.5 * h * k2.q, s.p + 0.5 * h * k2.p});
    ShotState k4 = f({s.q + h * k3.q, s.p + h * k3.p});
    s.q += h / 6 * (k1.q + 2 * k2.q + 2 * k3.q + k4.q);
    s.p += h / 6 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p);
}

// +1: crossed zero (Q(0) too large), -1: turned around (too small).
int classify_shot(Real a, Real h, Real r_max) {
    ShotState s{a, 0};
    for (Real r = 0; r < r_max; r += h) {
        rk4_step(s, h);
        if (s.q <= 0) return +1;
        if (s.p > 0) return -1;
    }
    return -1;  // still decaying at r_max: treat as undershoot
}

GroundStateQ solve_q_1d() {
    const Real dr = 1e-3;
    const Real R = 16;
    const int N = static_cast<int>(std::lround(R / dr));

    Real lo = 1.2, hi = 1.4;
    if (classify_shot(lo, dr, R) != -1 || classify_shot(hi, dr, R) != +1)
        throw std::runtime_error("solve_q: bracket lost");
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        const Real mid = 0.5 * (lo + hi);
        (classify_shot(mid, dr, R) == +1 ? hi : lo) = mid;
    }
    const Real a = 0.5 * (lo + hi);

    GroundStateQ q;
    q.dim = 1;
    q.lambda = -1;
    q.dr = dr;
    q.samples.assign(N + 1, 0);
    q.samples[0] = a;
    ShotState s{a, 0};
    int graft = -1;
    for (int i = 1; i <= N; ++i) {
        rk4_step(s, dr);
        q.samples[i] = s.q;
        if (s.q < 5e-4 * a) {
            graft = i;
            break;
        }
    }
    if (graft < 0) throw std::runtime_error("solve_q: no graft point");
    // Beyond the graft radius the profile is a pure exponential to well
    // below the target accuracy; the integrated tail is contaminated by
    // the growing mode of the linearization, so replace it.
    for (int i = graft + 1; i <= N; ++i)
        q.samples[i] = q.samples[graft] * std::exp(-kSqrt2 * (i - graft) * dr);

    // mass over the whole line (Simpson on [0,R] doubled + analytic tail)
    Real m = 0;
    for (int i = 0; i < N; i += 2) {
        const Real f0 = q.samples[i] * q.samples[i];
        const Real f1 = q.samples[i + 1] * q.samples[i + 1];
        const Real f2 = q.samples[i + 2] * q.samples[i + 2];
        m += dr / 3 * (f0 + 4 * f1 + f2);
    }
    m += q.samples[N] * q.samples[N] / (2 * kSqrt2);
    q.mass = 2 * m;
    return q;
}

// ---- n = 2 -----------------------------------------------------------
// -1/2 (Q'' + Q'/r) + Q = Q^3 on a uniform radial grid; normalized
// fixed-point iteration with the second-order operator, then defect
// correction against fourth-order stencils. Far field ~ K0(sqrt(2) r).

void thomas_solve(std::vector<Real>& a, std::vector<Real>& b,
                  std::vector<Real>& c, std::vector<Real>& rhs) {
    const std::size_t n = b.size();
    for (std::size_t i = 1; i < n; ++i) {
        const Real w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[n - 1] /= b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - c[i] * rhs[i + 1]) / b[i];
}

struct RadialOp {
    int N;
    Real dr;
    Real rho1, rho2;  // far-field continuation ratios Q(R+j dr)/Q(R)

    // rows of -1/2 Delta_2 + diag_shift - damp_i, damp optional
    void tridiag(const std::vector<Real>* damp, std::vector<Real>& a,
                 std::vector<Real>& b, std::vector<Real>& c) const {
        a.assign(N + 1, 0);
        b.assign(N + 1, 0);
        c.assign(N + 1, 0);
        const Real id2 = 1 / (dr * dr);
        b[0] = 2 * id2 + 1;
        c[0] = -2 * id2;
        for (int i = 1; i <= N; ++i) {
            const Real ir = 1 / (2 * i * dr * dr);  // 1/(2 r_i dr)
            a[i] = -0.5 * (id2 - ir);
            b[i] = id2 + 1;
            c[i] = -0.5 * (id2 + ir);
        }
        b[N] += c[N] * rho1;
        c[N] = 0;
        if (damp)
            for (int i = 0; i <= N; ++i) b[i] -= (*damp)[i];
    }

    Real at(const std::vector<Real>& q, int i) const {
        if (i < 0) return q[-i];
        if (i <= N) return q[i];
        return q[N] * (i == N + 1 ? rho1 : rho2);
    }

    // fourth-order residual of -1/2 Delta Q + Q - Q^3
    Real residual4(const std::vector<Real>& q, int i) const {
        const Real id2 = 1 / (12 * dr * dr);
        const Real qm2 = at(q, i - 2), qm1 = at(q, i - 1), q0 = q[i],
                   qp1 = at(q, i + 1), qp2 = at(q, i + 2);
        const Real d2 = (-qm2 + 16 * qm1 - 30 * q0 + 16 * qp1 - qp2) * id2;
        Real lap;
        if (i == 0) {
            lap = 2 * d2;
        } else {
            const Real d1 = (qm2 - 8 * qm1 + 8 * qp1 - qp2) / (12 * dr);
            lap = d2 + d1 / (i * dr);
        }
        return -0.5 * lap + q0 - q0 * q0 * q0;
    }
};

GroundStateQ solve_q_2d() {
    const Real dr = 2e-3;
    const Real R = 14;
    const int N = static_cast<int>(std::lround(R / dr));

    RadialOp op{N, dr, 0, 0};
    op.rho1 = std::cyl_bessel_k(0.0, kSqrt2 * (R + dr)) /
              std::cyl_bessel_k(0.0, kSqrt2 * R);
    op.rho2 = std::cyl_bessel_k(0.0, kSqrt2 * (R + 2 * dr)) /
              std::cyl_bessel_k(0.0, kSqrt2 * R);

    std::vector<Real> q(N + 1);
    for (int i = 0; i <= N; ++i) {
        const Real r = i * dr;
        q[i] = 2.2 * std::exp(-0.5 * r * r);
    }

    std::vector<Real> a, b, c, rhs(N + 1), base_b;
    // stage 1: normalized fixed-point iteration, Q <- S^{3/2} L^{-1} Q^3
    for (int it = 0; it < 400; ++it) {
        op.tridiag(nullptr, a, b, c);
        base_b = b;
        for (int i = 0; i <= N; ++i) rhs[i] = q[i] * q[i] * q[i];
        // S = <L q, q>_r / <q^3, q>_r
        Real num = 0, den = 0;
        for (int i = 0; i <= N; ++i) {
            Real lq = base_b[i] * q[i];
            if (i > 0) lq += a[i] * q[i - 1];
            if (i < N) lq += c[i] * q[i + 1];
            const Real w = i * dr;
            num += w * lq * q[i];
            den += w * rhs[i] * q[i];
        }
        const Real s = num / den;
        thomas_solve(a, b, c, rhs);
        const Real gain = std::pow(s, 1.5);
        Real delta = 0;
        for (int i = 0; i <= N; ++i) {
            const Real next = gain * rhs[i];
            delta = std::max(delta, std::abs(next - q[i]));
            q[i] = next;
        }
        if (delta < 1e-10 && it > 10) break;
    }

    // stage 2: defect correction to the fourth-order discretization
    std::vector<Real> damp(N + 1), f(N + 1);
    for (int it = 0; it < 200; ++it) {
        Real sup = 0;
        for (int i = 0; i <= N; ++i) {
            f[i] = op.residual4(q, i);
            sup = std::max(sup, std::abs(f[i]));
        }
        if (sup < 1e-12) break;
        for (int i = 0; i <= N; ++i) damp[i] = 3 * q[i] * q[i];
        op.tridiag(&damp, a, b, c);
        rhs = f;
        thomas_solve(a, b, c, rhs);
        for (int i = 0; i <= N; ++i) q[i] -= rhs[i];
    }

    GroundStateQ out;
    out.dim = 2;
    out.lambda = -1;
    out.dr = dr;
    out.samples = std::move(q);
    Real m = 0;
    for (int i = 0; i < N; i += 2) {
        auto f2 = [&](int k) {
            return out.samples[k] * out.samples[k] * (k * dr);
        };
        m += dr / 3 * (f2(i) + 4 * f2(i + 1) + f2(i + 2));
    }
    out.mass = 2 * M_PI * m;
    return out;
}

}  // namespace

Real GroundStateQ::eval(Real r) const {
    r = std::abs(r);
    const int N = static_cast<int>(samples.size()) - 1;
    const Real R = dr * N;
    if (r >= R) {
        if (dim == 1) return samples[N] * std::exp(-kSqrt2 * (r - R));
        return samples[N] * std::cyl_bessel_k(0.0, kSqrt2 * r) /
               std::cyl_bessel_k(0.0, kSqrt2 * R);
    }
    const int i = std::min(static_cast<int>(r / dr), N - 2);
    const Real u = r / dr - i;  // in [0,1)
    auto at = [&](int k) { return samples[k < 0 ? -k : k]; };
    const Real qm = at(i - 1), q0 = at(i), q1 = at(i + 1), q2 = at(i + 2);
    // 4-point Lagrange on uniform nodes
    return qm * (-u * (u - 1) * (u - 2) / 6) + q0 * ((u + 1) * (u - 1) * (u - 2) / 2) +
           q1 * (-(u + 1) * u * (u - 2) / 2) + q2 * ((u + 1) * u * (u - 1) / 6);
}

GroundStateQ solve_q(int dim, Real lambda) {
    if (!(lambda < 0)) throw std::invalid_argument("solve_q: lambda must be < 0");
    if (dim != 1 && dim != 2) throw std::invalid_argument("solve_q: dim must be 1 or 2");
    GroundStateQ q = (dim == 1) ? solve_q_1d() : solve_q_2d();
    if (lambda != -1) {
        const Real amp = std::pow(-lambda, -dim / 4.0);
        for (Real& v : q.samples) v *= amp;
        q.mass *= amp * amp;
        q.lambda = lambda;
    }
    for (std::size_t i = 0; i < q.samples.size(); ++i) {
        if (!(q.samples[i] > 0) || (i > 0 && q.samples[i] >= q.samples[i - 1]))
            throw std::runtime_error("solve_q: profile not positive decreasing");
    }
    return q;
}

Real ode_residual(const GroundStateQ& q) {
    const int N = static_cast<int>(q.samples.size()) - 1;
    const Real dr = q.dr;
    const Real p = 1 + 4.0 / q.dim;
    auto at = [&](int i) -> Real {
        if (i < 0) return q.samples[-i];
        if (i <= N) return q.samples[i];
        return q.eval(i * dr);
    };
    Real sup = 0;
    for (int i = 0; i <= N; ++i) {
        const Real d2 =
            (-at(i - 2) + 16 * at(i - 1) - 30 * at(i) + 16 * at(i + 1) - at(i + 2)) /
            (12 * dr * dr);
        Real lap;
        if (i == 0) {
            lap = q.dim * d2;
        } else {
            const Real d1 =
                (at(i - 2) - 8 * at(i - 1) + 8 * at(i + 1) - at(i + 2)) / (12 * dr);
            lap = d2 + (q.dim - 1) * d1 / (i * dr);
        }
        const Real res =
            -0.5 * lap + at(i) + q.lambda * std::pow(at(i), p);
        sup = std::max(sup, std::abs(res));
    }
    return sup;
}

Real weinstein_constant(const GroundStateQ& q, Real lambda, int dim) {
    if (!(lambda < 0)) throw std::invalid_argument("weinstein_constant: lambda >= 0");
    const Real sigma = 2.0 / dim;
    return std::pow((sigma + 1) / (2 * std::abs(lambda) * std::pow(q.mass, 2.0 / dim)),
                    1 / (2 + 4.0 / dim));
}

namespace {

// Samples amp * Q(|contraction*(x - x1) - x0|) * e^{i(chirp |x-x1|^2/2 + phase)}.
Field sample_profile(GridPtr grid, const GroundStateQ& q, Real contraction,
                     Real amp, Real chirp, Real phase,
                     const std::array<Real, 3>& x1,
                     const std::array<Real, 3>& x0) {
    const Grid& g = *grid;
    if (g.dim != q.dim)
        throw GridError("ground-state profile dimension mismatch");
    // contraction = spatial scale of the profile argument; require a few
    // grid points across the core
    if (1 / contraction < 4 * g.dx)
        throw GridError("ground-state profile under-resolved on this grid");
    CArray v(g.size());
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        auto ijk = g.unravel(idx);
        Real r2 = 0, s2 = 0;  // |x - x1|^2 and |profile argument|^2
        for (int a = 0; a < g.dim; ++a) {
            const Real d = g.axis_x[ijk[a]] - x1[a];
            r2 += d * d;
            const Real t = contraction * d - x0[a];
            s2 += t * t;
        }
        v[idx] = amp * q.eval(std::sqrt(s2)) *
                 std::exp(Complex(0, chirp * r2 / 2 + phase));
    }
    return Field{grid, std::move(v)};
}

}  // namespace

Field merle_initial_data(GridPtr grid, const GroundStateQ& q,
                         const MerleParams& p) {
    return merle_exact_v(std::move(grid), q, p, 0);
}

Field merle_exact_v(GridPtr grid, const GroundStateQ& q, const MerleParams& p,
                    Real t) {
    if (!(p.T > 0) || !(p.delta > 0))
        throw std::invalid_argument("merle data: need T > 0, delta > 0");
    if (!(t < p.T)) throw std::invalid_argument("merle_exact_v: need t < T");
    const Real tau = p.T - t;
    const Real amp = std::pow(p.delta / tau, q.dim / 2.0);
    const Real phase = p.theta + p.delta * p.delta / tau;
    // profile argument delta*((x - x1)/tau - x0) = (delta/tau)(x-x1) - delta*x0
    std::array<Real, 3> off{p.delta * p.x0[0], p.delta * p.x0[1],
                            p.delta * p.x0[2]};
    return sample_profile(std::move(grid), q, p.delta / tau, amp, -1 / tau,
                          phase, p.x1, off);
}

Field critical_exact_solution(GridPtr grid, const GroundStateQ& q, Real T,
                              Real t) {
    if (!(T > 0)) throw std::invalid_argument("critical_exact_solution: T <= 0");
    const Real e = std::exp(t / T);
    const Real amp = std::pow(e / T, q.dim / 2.0);
    const Real phase = (e * e + 1) / (2 * T);
    return sample_profile(std::move(grid), q, e / T, amp, -1 / T, phase,
                          {0, 0, 0}, {0, 0, 0});
}

}  // namespace nlsq
