#pragma once

#include "agentseg/grid.hpp"

namespace agentseg {

/// Forward differences, zero in the last column/row (Neumann).
VectorField gradient(const ScalarField& u, const GridGeometry& geo);

/// Negative adjoint of gradient():  <gradient(u), p> == -<u, divergence(p)>.
ScalarField divergence(const VectorField& p, const GridGeometry& geo);

/// Five-point Laplacian with ghost cells mirrored across the boundary face
/// (u[-1] = u[0], u[W] = u[W-1]). On every node this agrees with
/// divergence(gradient(u)) up to rounding, which keeps terminal adjoint seeds consistent
/// with the discrete cost functionals.
ScalarField laplacian(const ScalarField& u, const GridGeometry& geo);

} // namespace agentseg
