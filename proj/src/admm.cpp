#include "agentseg/admm.hpp"

#include <cmath>

#include "agentseg/cost.hpp"
#include "agentseg/error.hpp"
#include "agentseg/operators.hpp"

namespace agentseg {

std::array<double, 2> shrink(std::array<double, 2> a, double rho) {
    if (!(rho > 0.0)) throw ParameterError("rho must be positive");
    const double norm = std::hypot(a[0], a[1]);
    const double threshold = 1.0 / rho;
    if (norm <= threshold) return {0.0, 0.0};
    const double scale = (norm - threshold) / norm;
    return {scale * a[0], scale * a[1]};
}

VectorField update_v(const ScalarField& c_terminal, const VectorField& mu, double rho,
                     const GridGeometry& geo) {
    if (!(rho > 0.0)) throw ParameterError("rho must be positive");
    require_same_shape(c_terminal, mu.x, "update_v");
    const VectorField g = gradient(c_terminal, geo);
    VectorField v(geo.width, geo.height);
    const long n = static_cast<long>(v.size());
#pragma omp parallel for schedule(static)
    for (long k = 0; k < n; ++k) {
        const auto s = shrink({g.x[k] - mu.x[k] / rho, g.y[k] - mu.y[k] / rho}, rho);
        v.x[k] = s[0];
        v.y[k] = s[1];
    }
    return v;
}

VectorField update_mu(const VectorField& mu, const VectorField& v, const VectorField& grad_terminal,
                      double gamma) {
    if (!(gamma > 0.0)) throw ParameterError("gamma must be positive");
    require_same_shape(mu.x, v.x, "update_mu");
    require_same_shape(mu.x, grad_terminal.x, "update_mu");
    VectorField out = mu;
    for (std::size_t k = 0; k < out.size(); ++k) {
        out.x[k] += gamma * (v.x[k] - grad_terminal.x[k]);
        out.y[k] += gamma * (v.y[k] - grad_terminal.y[k]);
    }
    return out;
}

double primal_residual(const VectorField& v, const VectorField& grad_terminal) {
    require_same_shape(v.x, grad_terminal.x, "primal_residual");
    double s = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double rx = v.x[k] - grad_terminal.x[k];
        const double ry = v.y[k] - grad_terminal.y[k];
        s += rx * rx + ry * ry;
    }
    return std::sqrt(s * v.x.geometry().cell_area());
}

void AdmmConfig::validate() const {
    if (!(rho > 0.0)) throw ParameterError("rho must be positive");
    if (!(gamma > 0.0)) throw ParameterError("gamma must be positive");
    if (!(primal_tol > 0.0)) throw ParameterError("primal tolerance must be positive");
    if (max_outer < 0) throw ParameterError("max_outer must be non-negative");
    inner.validate();
}

AdmmReport admm_solve(const ImageGrid& image, const AdmmConfig& cfg) {
    cfg.validate();
    const GridGeometry geo = image.geometry();

    AdmmReport report;
    report.mu = VectorField(geo.width, geo.height);
    report.final_control = ControlTrajectory::constant(cfg.inner.dt, cfg.inner.steps, cfg.inner.eps_init);
    report.final_state = integrate_forward(image, report.final_control, cfg.inner.kernel);
    report.v = update_v(report.final_state.terminal(), report.mu, cfg.rho, geo);

    for (int outer = 0; outer < cfg.max_outer; ++outer) {
        const DalVariant variant = TvVariant{report.v, report.mu, cfg.rho};
        DalReport inner = dal_solve(image, cfg.inner, variant, report.final_control);
        report.inner_iterations.push_back(inner.iterations);
        report.inner_cost_histories.push_back(std::move(inner.cost_history));
        report.final_control = std::move(inner.final_control);
        report.final_state = std::move(inner.final_state);

        const ScalarField& terminal = report.final_state.terminal();
        report.v = update_v(terminal, report.mu, cfg.rho, geo);
        const VectorField grad = gradient(terminal, geo);
        const double residual = primal_residual(report.v, grad);
        report.objective_history.push_back(
            cost_admm_objective(terminal, report.v, report.mu, image, cfg.inner.alpha, cfg.rho).total);
        report.primal_residual_history.push_back(residual);
        report.mu = update_mu(report.mu, report.v, grad, cfg.gamma);
        ++report.outer_iterations;

        if (residual <= cfg.primal_tol) {
            report.stop_reason = AdmmStopReason::primal_tolerance;
            break;
        }
    }
    return report;
}

} // namespace agentseg
