#pragma once

#include "agentseg/grid.hpp"

// Discrete functionals on the image grid. All use the same rectangular
// quadrature (cell area hx * hy times the pointwise integrand, summed over
// pixels) and the forward-difference gradient from operators.hpp.

namespace agentseg {

struct CostBreakdown {
    double total = 0.0;
    double smoothness = 0.0;  // |grad u|^2 / 2, |grad u| or |v| depending on the functional
    double fidelity = 0.0;    // alpha/2 (u - I)^2
    double coupling = 0.0;    // mu . (v - grad u); Lagrangian only
    double penalty = 0.0;     // rho/2 |v - grad u|^2 (Lagrangian) or rho/2 |v - grad u + mu/rho|^2
};

/// int 1/2 |grad u|^2 + alpha/2 (u - I)^2
CostBreakdown cost_quadratic(const ScalarField& u, const ImageGrid& image, double alpha);

/// int |grad u| + alpha/2 (u - I)^2   (isotropic)
CostBreakdown cost_tv(const ScalarField& u, const ImageGrid& image, double alpha);

/// int |v| + mu.(v - grad u) + rho/2 |v - grad u|^2 + alpha/2 (u - I)^2
CostBreakdown cost_lagrangian(const ScalarField& u, const VectorField& v, const VectorField& mu,
                              const ImageGrid& image, double alpha, double rho);

/// int rho/2 |v - grad u + mu/rho|^2 + |v| + alpha/2 (u - I)^2
/// Equals cost_lagrangian + int |mu|^2 / (2 rho).
CostBreakdown cost_admm_objective(const ScalarField& u, const VectorField& v, const VectorField& mu,
                                  const ImageGrid& image, double alpha, double rho);

/// Quadrature of a non-negative pointwise quantity, e.g. int |mu|^2.
double integrate(const ScalarField& integrand);

} // namespace agentseg
