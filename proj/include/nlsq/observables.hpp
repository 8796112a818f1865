#pragma once

#include "nlsq/grid.hpp"
#include "nlsq/propagators.hpp"

#include <vector>

namespace nlsq {

/// One time slice of every monitored quantity.
struct ObservableRecord {
    Real t = 0;
    Real mass = 0;        // ||u||_{L^2}^2
    Real energy = 0;      // conserved energy
    Real e1 = 0, e2 = 0;  // split energies, e1 + e2 = energy
    Real variance_y = 0;  // y(t) = ||x u||_{L^2}^2
    Real momentum_p = 0;  // p(t) = Im int conj(u) x . grad u
    Real j_norm = 0;      // ||J(t) u||_{L^2}
    Real h_norm = 0;      // ||H(t) u||_{L^2}
    Real grad_norm = 0;   // ||grad u||_{L^2}
    Real nl_norm = 0;     // ||u||_{L^{2s+2}}^{2s+2}
    Real sup_norm = 0;
};

/// E = 1/2 ||grad f||^2 + (c/2) ||x f||^2 + lambda/(sigma+1) ||f||_{2s+2}^{2s+2},
/// with c the signed quadratic coefficient of the potential.
Real energy(const Field& f, const PotentialSpec& pot, const NonlinearitySpec& nl);

/// J(t) = omega x sinh(omega t) + i cosh(omega t) grad, computed through the
/// chirp / gradient / inverse-chirp factorization. omega = 0 gives i grad.
std::vector<Field> op_J(const Field& f, Real t, Real omega);
/// H(t) = x cosh(omega t) + i sinh(omega t)/omega grad; H(0) = x.
std::vector<Field> op_H(const Field& f, Real t, Real omega);

// Direct evaluations of the defining formulas, kept as the algebraic
// cross-check of the factorized path.
std::vector<Field> op_J_direct(const Field& f, Real t, Real omega);
// Rotating-frame analogs for the confining potential (cos/sin coefficients).
std::vector<Field> op_J_confining(const Field& f, Real t, Real omega);
std::vector<Field> op_H_confining(const Field& f, Real t, Real omega);
std::vector<Field> op_H_direct(const Field& f, Real t, Real omega);

Real vector_l2(const std::vector<Field>& comps);

Real momentum(const Field& f);  // Im int conj(f) x . grad f

/// E1 = 1/2 ||J f||^2 + lambda/(s+1) cosh^2 ||f||_{2s+2}^{2s+2},
/// E2 = -omega^2/2 ||H f||^2 - lambda/(s+1) sinh^2 ||f||_{2s+2}^{2s+2}.
std::pair<Real, Real> energy_split(const Field& f, Real t, Real omega,
                                   const NonlinearitySpec& nl);

ObservableRecord record_observables(const Field& f, Real t,
                                    const PotentialSpec& pot,
                                    const NonlinearitySpec& nl);

/// Max relative defect of dE1/dt = (omega lambda/(2s+2))(2-ns) sinh(2 omega t)
/// ||u||_{2s+2}^{2s+2} over interior records (uniform sampling required).
Real evolution_law_residual(const std::vector<ObservableRecord>& series,
                            Real omega, const NonlinearitySpec& nl, int dim);

/// y(t) predicted from y(0), 2 p(0) and the recorded forcing
/// f(s) = 4E - 2 lambda/(s+1) (2-ns) ||u||_{2s+2}^{2s+2} via the variance
/// ODE's closed-form solution (trapezoid convolution).
std::vector<Real> virial_closed_form(const std::vector<ObservableRecord>& series,
                                     Real omega, const NonlinearitySpec& nl,
                                     int dim);

/// c_r cosh(omega t)^{-d} ||f||_2^{1-d} ||J(t) f||_2^d - ||f||_r with
/// d = n (1/2 - 1/r); nonnegative whenever c_r is a valid constant.
Real gn_check(const Field& f, Real t, Real omega, Real r, Real c_r);

Real delta_exponent(Real r, int dim);  // n (1/2 - 1/r)

}  // namespace nlsq
