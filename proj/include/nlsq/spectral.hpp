#pragma once

#include "nlsq/grid.hpp"

#include <functional>
#include <vector>

namespace nlsq {

/// In-place n-dimensional FFT over row-major data (unnormalized forward,
/// inverse carries the 1/m^n). Plans are cached per thread.
void fft_forward(const Grid& g, CArray& data);
void fft_inverse(const Grid& g, CArray& data);

/// Multiply the spectrum by mult(|xi|^2) and transform back.
Field apply_spectral_multiplier(const Field& f,
                                const std::function<Complex(Real)>& mult);

/// Component j is IFFT( i xi_j * FFT(f) ).
std::vector<Field> spectral_gradient(const Field& f);

/// Chirp-Z evaluation h_k = sum_j g_j exp(i u_j v_k), where
/// u_j = u0 + j du and v_k = v0 + k dv, via Bluestein's factorization
/// (three FFTs of length 2m). Exact to roundoff for any real spacings.
CArray czt(const CArray& g, Real u0, Real du, Real v0, Real dv);

/// Band-limited resample: evaluates the trigonometric interpolant of f at
/// the points x/scale. Points with |x/scale| outside the box are zeroed and
/// counted; throws if more than half the samples map outside.
struct ResampleResult {
    Field field;
    Real out_of_box_fraction = 0;
};
ResampleResult resample(const Field& f, Real scale);

/// Pointwise multiply by exp(i gamma |x|^2 / 2).
Field chirp_multiply(const Field& f, Real gamma);

}  // namespace nlsq
