#include "nlsq/grid.hpp"
#include "nlsq/spectral.hpp"

#include <cmath>

namespace nlsq {

namespace {
bool power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }
}

GridPtr make_grid(int n, int m, Real L) {
    if (n < 1 || n > 3) throw GridError("grid dimension must be 1, 2 or 3");
    if (!power_of_two(m) || m < 16)
        throw GridError("points per axis must be a power of two >= 16");
    if (!(L > 0)) throw GridError("half-width must be positive");

    auto g = std::make_shared<Grid>();
    g->dim = n;
    g->pts = m;
    g->half_width = L;
    g->dx = 2 * L / m;
    g->axis_x.resize(m);
    for (int k = 0; k < m; ++k) g->axis_x[k] = -L + k * g->dx;
    // FFT storage order: 0..m/2-1, then -m/2..-1, scaled by pi/L.
    g->axis_xi.resize(m);
    const Real dxi = M_PI / L;
    for (int j = 0; j < m; ++j) {
        int jj = (j < m / 2) ? j : j - m;
        g->axis_xi[j] = jj * dxi;
    }
    return g;
}

Field sample_gaussian(const GridPtr& grid, const ChirpedGaussian& p) {
    if (!(p.amplitude > 0) || !(p.width > 0))
        throw GridError("gaussian amplitude and width must be positive");
    const Grid& g = *grid;
    CArray v(g.size());
    const Real inv2a2 = 1.0 / (2 * p.width * p.width);
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto k = g.unravel(i);
        Real r2 = 0;
        for (int a = 0; a < g.dim; ++a) {
            Real d = g.axis_x[k[a]] - p.center[a];
            r2 += d * d;
        }
        v[i] = p.amplitude * std::exp(-r2 * inv2a2) *
               std::exp(Complex(0, p.chirp * r2 / 2));
    }
    return Field(grid, std::move(v));
}

Real boundary_amplitude(const Field& f) {
    const Grid& g = *f.grid;
    Real worst = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto k = g.unravel(i);
        bool edge = false;
        for (int a = 0; a < g.dim; ++a)
            if (k[a] == 0 || k[a] == g.pts - 1) edge = true;
        if (edge) worst = std::max(worst, std::abs(f.values[i]));
    }
    return worst;
}

Real l2_norm(const Field& f) {
    const Real w = std::pow(f.grid->dx, f.grid->dim);
    return std::sqrt(f.values.abs2().sum() * w);
}

Real l2_distance(const Field& a, const Field& b) {
    const Real w = std::pow(a.grid->dx, a.grid->dim);
    return std::sqrt((a.values - b.values).abs2().sum() * w);
}

Real sup_distance(const Field& a, const Field& b) {
    return (a.values - b.values).abs().maxCoeff();
}

Real lp_norm(const Field& f, Real p) {
    if (p < 1) throw GridError("Lp norm requires p >= 1");
    const Real w = std::pow(f.grid->dx, f.grid->dim);
    return std::pow((f.values.abs().pow(p)).sum() * w, 1.0 / p);
}

Real l1_norm(const Field& f) {
    const Real w = std::pow(f.grid->dx, f.grid->dim);
    return f.values.abs().sum() * w;
}

Real weighted_norm(const Field& f) {
    const Grid& g = *f.grid;
    const Real w = std::pow(g.dx, g.dim);
    Real s = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        s += g.x_squared(i) * std::norm(f.values[i]);
    return std::sqrt(s * w);
}

Norms norms(const Field& f) {
    Norms n;
    n.l2 = l2_norm(f);
    n.linf = f.values.abs().maxCoeff();
    n.weighted_x = weighted_norm(f);
    auto grads = spectral_gradient(f);
    Real g2 = 0;
    for (const auto& gf : grads) {
        Real v = l2_norm(gf);
        g2 += v * v;
    }
    n.grad_l2 = std::sqrt(g2);
    n.sigma = n.l2 + n.grad_l2 + n.weighted_x;
    return n;
}

}  // namespace nlsq
