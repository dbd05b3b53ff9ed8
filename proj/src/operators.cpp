#include "agentseg/operators.hpp"

#include "agentseg/error.hpp"

namespace agentseg {

namespace {

void check_geometry(const ScalarField& u, const GridGeometry& geo) {
    if (u.width() != geo.width || u.height() != geo.height) {
        throw ShapeError("field does not match grid geometry");
    }
}

} // namespace

VectorField gradient(const ScalarField& u, const GridGeometry& geo) {
    check_geometry(u, geo);
    const int w = geo.width;
    const int h = geo.height;
    VectorField g(w, h);
    const double ihx = 1.0 / geo.hx;
    const double ihy = 1.0 / geo.hy;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            g.x(i, j) = i + 1 < w ? (u(i + 1, j) - u(i, j)) * ihx : 0.0;
            g.y(i, j) = j + 1 < h ? (u(i, j + 1) - u(i, j)) * ihy : 0.0;
        }
    }
    return g;
}

ScalarField divergence(const VectorField& p, const GridGeometry& geo) {
    check_geometry(p.x, geo);
    check_geometry(p.y, geo);
    const int w = geo.width;
    const int h = geo.height;
    ScalarField d(w, h);
    const double ihx = 1.0 / geo.hx;
    const double ihy = 1.0 / geo.hy;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            // Transpose of the forward difference: the last column's
            // component is never read by gradient() and drops out.
            const double px = (i + 1 < w ? p.x(i, j) : 0.0) - (i > 0 ? p.x(i - 1, j) : 0.0);
            const double py = (j + 1 < h ? p.y(i, j) : 0.0) - (j > 0 ? p.y(i, j - 1) : 0.0);
            d(i, j) = px * ihx + py * ihy;
        }
    }
    return d;
}

ScalarField laplacian(const ScalarField& u, const GridGeometry& geo) {
    check_geometry(u, geo);
    const int w = geo.width;
    const int h = geo.height;
    ScalarField out(w, h);
    const double ihx = 1.0 / geo.hx;
    const double ihy = 1.0 / geo.hy;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const double c = u(i, j);
            const double west = i > 0 ? u(i - 1, j) : c;
            const double east = i + 1 < w ? u(i + 1, j) : c;
            const double south = j > 0 ? u(i, j - 1) : c;
            const double north = j + 1 < h ? u(i, j + 1) : c;
            // Same operation order as divergence(gradient(u)).
            out(i, j) = ((east - c) * ihx - (c - west) * ihx) * ihx +
                        ((north - c) * ihy - (c - south) * ihy) * ihy;
        }
    }
    return out;
}

} // namespace agentseg
