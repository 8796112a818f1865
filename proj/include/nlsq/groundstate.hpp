#pragma once

#include "nlsq/grid.hpp"

#include <array>
#include <vector>

namespace nlsq {

// Radial profile of the positive, decaying solution of
//   -1/2 Q'' - (n-1)/(2r) Q' + Q = -lambda Q^{1+4/n},   lambda < 0,
// sampled on [0, R] with spacing dr, plus its far-field extension.
struct GroundStateQ {
    int dim = 1;
    Real lambda = -1;
    Real dr = 0;
    std::vector<Real> samples;  // Q(i*dr), i = 0..N
    Real mass = 0;              // ||Q||_{L2}^2 over R^n

    Real q0() const { return samples.front(); }
    Real radius() const { return dr * Real(samples.size() - 1); }
    // Cubic interpolation inside [0, R]; asymptotic tail beyond.
    Real eval(Real r) const;
};

GroundStateQ solve_q(int dim, Real lambda);

// Sup-norm of the defining ODE residual over the sample set (5-point
// stencils; used to certify solve_q output).
Real ode_residual(const GroundStateQ& q);

// Sharp interpolation constant for the critical exponent r = 2 + 4/n:
// |lambda|/(sigma+1) c^{2+4/n} mass^{2/n} = 1/2 with sigma = 2/n.
Real weinstein_constant(const GroundStateQ& q, Real lambda, int dim);

struct MerleParams {
    Real T = 1;      // blow-up time, > 0
    Real delta = 1;  // concentration parameter, > 0
    Real theta = 0;  // global phase
    std::array<Real, 3> x0{0, 0, 0};
    std::array<Real, 3> x1{0, 0, 0};
};

// Minimal-mass data u0(x) = (d/T)^{n/2} e^{i th - i|x-x1|^2/2T + i d^2/T}
//                           Q(d((x-x1)/T - x0)).
Field merle_initial_data(GridPtr grid, const GroundStateQ& q,
                         const MerleParams& p);

// The matching exact free solution at time t < T (same formula with T-t).
Field merle_exact_v(GridPtr grid, const GroundStateQ& q, const MerleParams& p,
                    Real t);

// Exact global solution at the borderline frequency omega = 1/T:
// u(t,x) = (e^{t/T}/T)^{n/2} Q(x e^{t/T}/T) e^{-i|x|^2/2T + i(e^{2t/T}+1)/2T}.
Field critical_exact_solution(GridPtr grid, const GroundStateQ& q, Real T,
                              Real t);

}  // namespace nlsq
