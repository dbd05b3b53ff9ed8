#include "agentseg/adjoint.hpp"

#include <string>

#include "agentseg/error.hpp"
#include "agentseg/operators.hpp"

namespace agentseg {

double ControlGradient::squared_norm() const noexcept {
    double s = 0.0;
    for (const auto& g : components) s += g.eps_x * g.eps_x + g.eps_c * g.eps_c;
    return s;
}

ScalarField terminal_quadratic(const ScalarField& c_terminal, const ImageGrid& image, double alpha) {
    if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");
    require_same_shape(c_terminal, image.field(), "terminal_quadratic");
    ScalarField out = laplacian(c_terminal, c_terminal.geometry());
    const ScalarField& img = image.field();
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = -out[k] + alpha * (c_terminal[k] - img[k]);
    }
    return out;
}

ScalarField terminal_tv(const ScalarField& c_terminal, const ImageGrid& image, const VectorField& v,
                        const VectorField& mu, double alpha, double rho) {
    if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");
    if (!(rho > 0.0)) throw ParameterError("rho must be positive");
    require_same_shape(c_terminal, image.field(), "terminal_tv");
    require_same_shape(c_terminal, v.x, "terminal_tv (v)");
    require_same_shape(c_terminal, mu.x, "terminal_tv (mu)");
    const GridGeometry geo = c_terminal.geometry();

    VectorField flux(geo.width, geo.height);
    for (std::size_t k = 0; k < flux.size(); ++k) {
        flux.x[k] = mu.x[k] + rho * v.x[k];
        flux.y[k] = mu.y[k] + rho * v.y[k];
    }
    const ScalarField div = divergence(flux, geo);
    const ScalarField lap = laplacian(c_terminal, geo);
    const ScalarField& img = image.field();
    ScalarField out(geo.width, geo.height);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = -rho * lap[k] + div[k] + alpha * (c_terminal[k] - img[k]);
    }
    return out;
}

namespace {

void check_lengths(const StateTrajectory& states, const ControlTrajectory& ctrl) {
    if (states.states.size() != ctrl.steps() + 1) {
        throw ShapeError("trajectory has " + std::to_string(states.states.size()) +
                         " states but control has " + std::to_string(ctrl.steps()) + " steps");
    }
}

} // namespace

AdjointTrajectory integrate_backward(const StateTrajectory& states, const ControlTrajectory& ctrl,
                                     const ScalarField& lambda_terminal, KernelKind kind) {
    check_lengths(states, ctrl);
    require_same_shape(states.terminal(), lambda_terminal, "integrate_backward");
    const std::size_t steps = ctrl.steps();
    AdjointTrajectory out;
    out.adjoints.resize(steps + 1);
    out.adjoints[steps] = lambda_terminal;
    for (std::size_t m = steps; m-- > 0;) {
        const ScalarField& next = out.adjoints[m + 1];
        const ScalarField jv = jacobian_vector_product(states.states[m], ctrl.pairs[m], next, kind);
        ScalarField cur = next;
        for (std::size_t k = 0; k < cur.size(); ++k) cur[k] += ctrl.dt * jv[k];
        out.adjoints[m] = std::move(cur);
    }
    return out;
}

ControlGradient reduced_gradient(const StateTrajectory& states, const AdjointTrajectory& adjoints,
                                 const ControlTrajectory& ctrl, KernelKind kind) {
    check_lengths(states, ctrl);
    if (adjoints.adjoints.size() != states.states.size()) {
        throw ShapeError("adjoint and state trajectories differ in length");
    }
    ControlGradient g;
    g.components.resize(ctrl.steps());
    for (std::size_t m = 0; m < ctrl.steps(); ++m) {
        const ControlSensitivity s = df_deps(states.states[m], ctrl.pairs[m], kind);
        const ScalarField& lam = adjoints.adjoints[m + 1];
        g.components[m] = {ctrl.dt * dot(lam, s.d_eps_x), ctrl.dt * dot(lam, s.d_eps_c)};
    }
    return g;
}

ControlGradient adjoint_gradient(const StateTrajectory& states, const ControlTrajectory& ctrl,
                                 const ScalarField& lambda_terminal, KernelKind kind) {
    check_lengths(states, ctrl);
    require_same_shape(states.terminal(), lambda_terminal, "adjoint_gradient");
    ControlGradient g;
    g.components.resize(ctrl.steps());
    ScalarField lam = lambda_terminal;
    for (std::size_t m = ctrl.steps(); m-- > 0;) {
        const AdjointStep step = adjoint_step(states.states[m], ctrl.pairs[m], lam, kind);
        g.components[m] = {ctrl.dt * step.pairing_x, ctrl.dt * step.pairing_c};
        for (std::size_t k = 0; k < lam.size(); ++k) lam[k] += ctrl.dt * step.jacobian_product[k];
    }
    return g;
}

} // namespace agentseg
