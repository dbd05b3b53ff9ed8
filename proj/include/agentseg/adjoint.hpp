#pragma once

#include <cstddef>
#include <vector>

#include "agentseg/control.hpp"
#include "agentseg/dynamics.hpp"
#include "agentseg/grid.hpp"

namespace agentseg {

/// lambda^0 .. lambda^M, paired with c^0 .. c^M of a StateTrajectory.
struct AdjointTrajectory {
    std::vector<ScalarField> adjoints;
};

/// Gradient of the reduced cost with respect to each (eps_x[m], eps_c[m]).
struct ControlGradient {
    std::vector<ControlPair> components;

    std::size_t steps() const noexcept { return components.size(); }
    double squared_norm() const noexcept;
};

/// -Laplacian(c_T) + alpha (c_T - I). Requires alpha > 0.
ScalarField terminal_quadratic(const ScalarField& c_terminal, const ImageGrid& image, double alpha);

/// -rho Laplacian(c_T) + div(mu + rho v) + alpha (c_T - I). Requires alpha, rho > 0.
ScalarField terminal_tv(const ScalarField& c_terminal, const ImageGrid& image,
                        const VectorField& v, const VectorField& mu, double alpha, double rho);

/// Exact transpose of the forward Euler recursion:
/// lambda^M = lambda_T, lambda^m = lambda^{m+1} + dt (dF/dc)(c^m, eps^m) lambda^{m+1}.
///
/// lambda_T must be the plain (pixel-sum) gradient of the terminal cost, i.e.
/// the terminal_* field times the cell area when the cost uses quadrature.
AdjointTrajectory integrate_backward(const StateTrajectory& states, const ControlTrajectory& ctrl,
                                     const ScalarField& lambda_terminal,
                                     KernelKind kind = KernelKind::standard_wendland);

/// g[m] = dt * sum_i lambda_i^{m+1} dF_i/d(eps)(c^m, eps^m). Positive sign:
/// this is d(cost)/d(eps[m]) for the cost whose gradient seeded lambda^M.
ControlGradient reduced_gradient(const StateTrajectory& states, const AdjointTrajectory& adjoints,
                                 const ControlTrajectory& ctrl,
                                 KernelKind kind = KernelKind::standard_wendland);

/// Backward sweep and gradient in one pass without storing the adjoint
/// trajectory. Same result as integrate_backward followed by reduced_gradient.
ControlGradient adjoint_gradient(const StateTrajectory& states, const ControlTrajectory& ctrl,
                                 const ScalarField& lambda_terminal,
                                 KernelKind kind = KernelKind::standard_wendland);

} // namespace agentseg
