#pragma once

#include "nlsq/grid.hpp"

namespace nlsq {

enum class PotentialKind { Free, Confining, Repulsive };

/// V(x) = +omega^2 |x|^2 / 2 (confining) or -omega^2 |x|^2 / 2 (repulsive).
struct PotentialSpec {
    PotentialKind kind = PotentialKind::Free;
    Real omega = 0;

    /// Coefficient c with V(x) = c |x|^2 / 2.
    Real quadratic_coefficient() const {
        switch (kind) {
            case PotentialKind::Confining: return omega * omega;
            case PotentialKind::Repulsive: return -omega * omega;
            default: return 0;
        }
    }
    void validate() const;
};

struct NonlinearitySpec {
    Real lambda = 0;
    Real sigma = 1;

    void validate(int dim) const;  // sigma > 0, subcritical if n >= 3
    bool focusing() const { return lambda < 0; }
};

/// Exact free kinetic flow: spectral multiplication by exp(-i |xi|^2 dt / 2).
Field kinetic_step(const Field& f, Real dt);

/// Exact potential + nonlinear phase flow:
/// u <- u exp(-i (V(x) + lambda |u|^{2 sigma}) dt).
Field phase_step(const Field& f, Real dt, const PotentialSpec& pot,
                 const NonlinearitySpec& nl);

/// Linear group of the quadratic-potential Schroedinger equation,
/// U_omega(t) = exp(i t (Delta + omega^2 |x|^2) / 2); omega = 0 is the free
/// propagator. Evaluated through one of two exact factorizations of the
/// Mehler kernel (chirp / scaled Fourier transform / chirp), chosen to keep
/// sampled chirps inside the grid bandwidth.
Field schrodinger_group(const Field& f, Real t, Real omega);

Field mehler_repulsive(const Field& f, Real t, Real omega);
Field mehler_confining(const Field& f, Real t, Real omega);

/// Literal trapezoid quadrature of the Mehler kernel (O(m^2), 1D only);
/// the reference implementation the fast paths are validated against.
Field mehler_quadrature_oracle(const Field& f, Real t, Real omega,
                               PotentialKind kind);

/// Ratio ||U_omega(t) f||_inf * |2 pi t|^{n/2} / ||f||_1; the dispersion
/// bound asserts this never exceeds 1 (up to quadrature tolerance).
Real dispersion_check(const Field& f, Real t, Real omega);

/// Ratio of the output chirp's edge frequency to the grid Nyquist limit;
/// values above 1 mean the propagated phase is aliased on this grid.
Real mehler_chirp_excess(const Grid& g, Real t, Real omega, PotentialKind kind);

// Classical rays of geometric optics for the three quadratic potentials.
// b is the quadratic phase coefficient of the data, phi = b |x|^2 / 2.
Real ray_free(Real x0, Real b, Real t);
/// x0 cos(omega (t + t0)) / cos(omega t0); requires |t0| < pi/(2 omega).
Real ray_confining(Real x0, Real omega, Real t0, Real t);
/// x0 (cosh(omega t) - b sinh(omega t)), the chirped repulsive ray.
Real ray_repulsive(Real x0, Real omega, Real b, Real t);

}  // namespace nlsq
