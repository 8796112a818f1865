#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <array>
#include <stdexcept>

namespace nlsq {

using Real = double;
using Complex = std::complex<Real>;
using CArray = Eigen::ArrayXcd;
using RArray = Eigen::ArrayXd;

/// Uniform periodic lattice on [-L, L)^n with spectral wavenumbers
/// xi_j in {-m/2, ..., m/2-1} * (pi/L). This wavenumber convention is the
/// single source of truth for every transform in the library.
struct Grid {
    int dim = 1;        // spatial dimension n, 1..3
    int pts = 0;        // points per axis m (power of two, >= 16)
    Real half_width = 0;  // L
    Real dx = 0;        // 2L/m
    RArray axis_x;      // lattice coordinates, one axis
    RArray axis_xi;     // wavenumbers in FFT storage order

    std::size_t size() const {
        std::size_t s = 1;
        for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(pts);
        return s;
    }

    // Decompose a row-major flat index into per-axis indices.
    std::array<int, 3> unravel(std::size_t idx) const {
        std::array<int, 3> k{0, 0, 0};
        for (int a = dim - 1; a >= 0; --a) {
            k[a] = static_cast<int>(idx % pts);
            idx /= pts;
        }
        return k;
    }

    // |x|^2 at a flat index.
    Real x_squared(std::size_t idx) const {
        auto k = unravel(idx);
        Real s = 0;
        for (int a = 0; a < dim; ++a) s += axis_x[k[a]] * axis_x[k[a]];
        return s;
    }
};

using GridPtr = std::shared_ptr<const Grid>;

struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GridPtr make_grid(int n, int m, Real L);

/// Complex field samples over a grid, row-major. Immutable by convention:
/// operations return new fields.
struct Field {
    GridPtr grid;
    CArray values;

    Field() = default;
    Field(GridPtr g, CArray v) : grid(std::move(g)), values(std::move(v)) {}
    explicit Field(GridPtr g) : grid(std::move(g)), values(CArray::Zero(grid->size())) {}

    bool finite() const { return values.isFinite().all(); }
};

/// Gaussian with quadratic phase: A exp(-|x-x0|^2/(2a^2)) exp(i b |x-x0|^2 / 2).
struct ChirpedGaussian {
    Real amplitude = 1.0;
    Real width = 1.0;
    std::array<Real, 3> center{0, 0, 0};
    Real chirp = 0.0;
};

Field sample_gaussian(const GridPtr& grid, const ChirpedGaussian& g);

/// Largest |value| on the boundary shell of the box, used to monitor
/// truncation of fields that are supposed to live on R^n.
Real boundary_amplitude(const Field& f);

struct Norms {
    Real l2 = 0;        // ||f||_{L^2}
    Real linf = 0;      // sup norm
    Real weighted_x = 0;  // ||x f||_{L^2}
    Real grad_l2 = 0;   // ||grad f||_{L^2}
    Real sigma = 0;     // l2 + grad_l2 + weighted_x
};

Norms norms(const Field& f);

Real l2_norm(const Field& f);
Real l2_distance(const Field& a, const Field& b);
Real sup_distance(const Field& a, const Field& b);
/// ||f||_{L^p}, p >= 1.
Real lp_norm(const Field& f, Real p);
Real l1_norm(const Field& f);
/// ||x f||_{L^2} using the untruncated box coordinate.
Real weighted_norm(const Field& f);

}  // namespace nlsq
