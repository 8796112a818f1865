#include "nlsq/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>

namespace nlsq {

namespace {

Eigen::FFT<Real>& fft_engine() {
    thread_local Eigen::FFT<Real> engine;
    return engine;
}

// Apply op to every 1D line along the given axis of row-major data.
template <typename Op>
void for_each_line(const Grid& g, int axis, CArray& data, Op&& op) {
    const int m = g.pts;
    std::size_t stride = 1;
    for (int a = g.dim - 1; a > axis; --a) stride *= m;
    const std::size_t block = stride * m;  // span of one axis sweep
    const std::size_t total = g.size();
    Eigen::VectorXcd line(m);
    for (std::size_t base = 0; base < total; base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            for (int k = 0; k < m; ++k) line[k] = data[base + off + k * stride];
            op(line);
            for (int k = 0; k < m; ++k) data[base + off + k * stride] = line[k];
        }
    }
}

}  // namespace

void fft_forward(const Grid& g, CArray& data) {
    Eigen::VectorXcd out(g.pts);
    for (int a = 0; a < g.dim; ++a)
        for_each_line(g, a, data, [&](Eigen::VectorXcd& line) {
            fft_engine().fwd(out, line);
            line = out;
        });
}

void fft_inverse(const Grid& g, CArray& data) {
    Eigen::VectorXcd out(g.pts);
    for (int a = 0; a < g.dim; ++a)
        for_each_line(g, a, data, [&](Eigen::VectorXcd& line) {
            fft_engine().inv(out, line);
            line = out;
        });
}

Field apply_spectral_multiplier(const Field& f,
                                const std::function<Complex(Real)>& mult) {
    const Grid& g = *f.grid;
    CArray data = f.values;
    fft_forward(g, data);
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto k = g.unravel(i);
        Real xi2 = 0;
        for (int a = 0; a < g.dim; ++a) xi2 += g.axis_xi[k[a]] * g.axis_xi[k[a]];
        data[i] *= mult(xi2);
    }
    fft_inverse(g, data);
    return Field(f.grid, std::move(data));
}

std::vector<Field> spectral_gradient(const Field& f) {
    const Grid& g = *f.grid;
    if (!f.finite()) throw GridError("spectral_gradient: non-finite input");
    CArray hat = f.values;
    fft_forward(g, hat);
    std::vector<Field> out;
    out.reserve(g.dim);
    for (int a = 0; a < g.dim; ++a) {
        CArray comp(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            auto k = g.unravel(i);
            comp[i] = Complex(0, g.axis_xi[k[a]]) * hat[i];
        }
        fft_inverse(g, comp);
        out.emplace_back(f.grid, std::move(comp));
    }
    return out;
}

CArray czt(const CArray& g, Real u0, Real du, Real v0, Real dv) {
    const int m = static_cast<int>(g.size());
    const int N = 2 * m;
    const Real phi = du * dv;
    // h_k = e^{i(u0 v0 + u0 k dv + k^2 phi/2)} sum_j a_j b_{k-j},
    // a_j = g_j e^{i(j du v0 + j^2 phi/2)},  b_p = e^{-i p^2 phi/2}.
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(N);
    for (int j = 0; j < m; ++j)
        a[j] = g[j] * std::exp(Complex(0, j * du * v0 + 0.5 * j * j * phi));
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(N);
    for (int p = -(m - 1); p <= m - 1; ++p)
        b[(p + N) % N] = std::exp(Complex(0, -0.5 * Real(p) * Real(p) * phi));
    Eigen::VectorXcd fa(N), fb(N), prod(N);
    fft_engine().fwd(fa, a);
    fft_engine().fwd(fb, b);
    prod = fa.cwiseProduct(fb);
    Eigen::VectorXcd conv(N);
    fft_engine().inv(conv, prod);
    CArray h(m);
    for (int k = 0; k < m; ++k)
        h[k] = conv[k] * std::exp(Complex(0, u0 * v0 + u0 * k * dv + 0.5 * k * k * phi));
    return h;
}

ResampleResult resample(const Field& f, Real scale) {
    if (!(scale > 0)) throw GridError("resample: scale must be positive");
    const Grid& g = *f.grid;
    const int m = g.pts;
    const Real L = g.half_width;

    CArray data = f.values;
    fft_forward(g, data);

    // Per-axis: reorder spectrum to monotonic wavenumbers and evaluate the
    // interpolant at x/scale via the chirp-Z transform.
    const Real du = M_PI / L;
    const Real u0 = -(m / 2) * du;
    const Real dv = g.dx / scale;
    const Real v0 = (-L) / scale + L;  // targets shifted so x_k -> t_k + L
    CArray line(m), shifted(m);
    for (int a = 0; a < g.dim; ++a) {
        CArray tmp = data;
        std::size_t stride = 1;
        for (int ax = g.dim - 1; ax > a; --ax) stride *= m;
        const std::size_t block = stride * m;
        for (std::size_t base = 0; base < g.size(); base += block)
            for (std::size_t off = 0; off < stride; ++off) {
                for (int k = 0; k < m; ++k) line[k] = tmp[base + off + k * stride];
                for (int j = 0; j < m; ++j)
                    shifted[j] = line[(j + m / 2) % m];  // monotonic ordering
                CArray h = czt(shifted, u0, du, v0, dv) / Real(m);
                for (int k = 0; k < m; ++k) data[base + off + k * stride] = h[k];
            }
    }

    // Zero samples whose preimage x/scale falls outside the box.
    std::size_t outside = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto k = g.unravel(i);
        bool out = false;
        for (int a = 0; a < g.dim; ++a) {
            Real t = g.axis_x[k[a]] / scale;
            if (t < -L || t >= L) out = true;
        }
        if (out) {
            data[i] = 0;
            ++outside;
        }
    }
    ResampleResult r{Field(f.grid, std::move(data)),
                     Real(outside) / Real(g.size())};
    if (r.out_of_box_fraction > 0.5)
        throw GridError("resample: more than half the samples map outside the box");
    return r;
}

Field chirp_multiply(const Field& f, Real gamma) {
    const Grid& g = *f.grid;
    CArray v = f.values;
    for (std::size_t i = 0; i < g.size(); ++i)
        v[i] *= std::exp(Complex(0, 0.5 * gamma * g.x_squared(i)));
    return Field(f.grid, std::move(v));
}

}  // namespace nlsq
