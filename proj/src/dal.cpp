#include "agentseg/dal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "agentseg/cost.hpp"
#include "agentseg/error.hpp"

namespace agentseg {

void DalConfig::validate() const {
    if (!(sigma0 > 0.0)) throw ParameterError("sigma0 must be positive");
    if (!(shrink > 0.0 && shrink < 1.0)) throw ParameterError("line-search factor b must lie in (0, 1)");
    if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw ParameterError("Armijo constant c must lie in (0, 1)");
    if (!(eta > 0.0)) throw ParameterError("eta must be positive");
    if (max_iters < 0) throw ParameterError("max_iters must be non-negative");
    if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("dt must be positive");
    if (max_shrinks < 1) throw ParameterError("max_shrinks must be positive");
    bounds.validate();
    if (!bounds.contains(eps_init)) throw ParameterError("initial control lies outside the bounds");
}

double terminal_cost(const DalProblem& problem, const ScalarField& c_terminal) {
    if (const auto* tv = std::get_if<TvVariant>(&problem.variant)) {
        return cost_admm_objective(c_terminal, tv->v, tv->mu, problem.image, problem.alpha, tv->rho)
            .total;
    }
    return cost_quadratic(c_terminal, problem.image, problem.alpha).total;
}

ScalarField terminal_seed(const DalProblem& problem, const ScalarField& c_terminal) {
    ScalarField seed;
    if (const auto* tv = std::get_if<TvVariant>(&problem.variant)) {
        seed = terminal_tv(c_terminal, problem.image, tv->v, tv->mu, problem.alpha, tv->rho);
    } else {
        seed = terminal_quadratic(c_terminal, problem.image, problem.alpha);
    }
    const double area = c_terminal.geometry().cell_area();
    for (double& s : seed.values()) s *= area;
    return seed;
}

double reduced_cost(const ControlTrajectory& ctrl, const DalProblem& problem) {
    const StateTrajectory traj = integrate_forward(problem.image, ctrl, problem.kernel);
    return terminal_cost(problem, traj.terminal());
}

ControlTrajectory project_controls(ControlTrajectory traj, const ControlBounds& bounds) {
    for (auto& p : traj.pairs) p = bounds.clamp(p);
    return traj;
}

ControlTrajectory descent_candidate(const ControlTrajectory& eps, const ControlGradient& g,
                                    double tau, const ControlBounds& bounds) {
    if (g.steps() != eps.steps()) throw ShapeError("gradient and control lengths differ");
    ControlTrajectory out = eps;
    for (std::size_t m = 0; m < out.steps(); ++m) {
        out.pairs[m] = bounds.clamp({eps.pairs[m].eps_x - tau * g.components[m].eps_x,
                                     eps.pairs[m].eps_c - tau * g.components[m].eps_c});
    }
    return out;
}

namespace {

// Remembers the trajectories of the most recent trial controls so the
// accepted one need not be integrated again.
class TrialCache {
public:
    void remember(const ControlTrajectory& ctrl, StateTrajectory traj) {
        slots_[next_] = {ctrl, std::move(traj), true};
        next_ = 1 - next_;
    }

    StateTrajectory take(const ControlTrajectory& ctrl) {
        for (auto& s : slots_) {
            if (s.valid && s.control == ctrl) {
                s.valid = false;
                return std::move(s.states);
            }
        }
        return {};
    }

    void clear() {
        for (auto& s : slots_) s.valid = false;
    }

private:
    struct Slot {
        ControlTrajectory control;
        StateTrajectory states;
        bool valid = false;
    };
    Slot slots_[2];
    int next_ = 0;
};

void measure_stationarity(DalReport& report, const ControlBounds& bounds) {
    double boundary = 0.0;
    double inner = 0.0;
    for (std::size_t m = 0; m < report.final_gradient.steps(); ++m) {
        const ControlPair p = report.final_control.pairs[m];
        const ControlPair g = report.final_gradient.components[m];
        auto check = [&](double value, double grad, double lo, double hi) {
            if (value <= lo && value >= hi) return;  // degenerate axis, anything goes
            if (value <= lo) {
                boundary = std::max(boundary, -grad);
            } else if (value >= hi) {
                boundary = std::max(boundary, grad);
            } else {
                inner = std::max(inner, std::abs(grad));
            }
        };
        check(p.eps_x, g.eps_x, bounds.eps_x_min, bounds.eps_x_max);
        check(p.eps_c, g.eps_c, bounds.eps_c_min, bounds.eps_c_max);
    }
    report.boundary_violation = boundary;
    report.inner_violation = inner;
}

} // namespace

DalReport dal_solve(const ImageGrid& image, const DalConfig& cfg, const DalVariant& variant,
                    std::optional<ControlTrajectory> warm_start) {
    cfg.validate();
    if (const auto* tv = std::get_if<TvVariant>(&variant)) {
        if (!(tv->rho > 0.0)) throw ParameterError("rho must be positive");
        require_same_shape(image.field(), tv->v.x, "dal_solve (v)");
        require_same_shape(image.field(), tv->mu.x, "dal_solve (mu)");
    }
    const DalProblem problem{image, cfg.alpha, variant, cfg.kernel};

    ControlTrajectory ctrl = warm_start ? project_controls(std::move(*warm_start), cfg.bounds)
                                        : ControlTrajectory::constant(cfg.dt, cfg.steps, cfg.eps_init);
    StateTrajectory states = integrate_forward(image, ctrl, cfg.kernel);
    double cost = terminal_cost(problem, states.terminal());

    DalReport report;
    report.cost_history.push_back(cost);

    TrialCache cache;
    auto trial_cost = [&](const ControlTrajectory& trial) {
        try {
            StateTrajectory t = integrate_forward(image, trial, cfg.kernel);
            const double value = terminal_cost(problem, t.terminal());
            cache.remember(trial, std::move(t));
            return value;
        } catch (const IntegrationDiverged&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    double sigma = cfg.sigma0;
    ControlGradient grad = adjoint_gradient(states, ctrl, terminal_seed(problem, states.terminal()),
                                            cfg.kernel);
    while (report.iterations < cfg.max_iters) {
        cache.clear();
        LineSearchResult ls = armijo_two_way(ctrl, cost, grad, sigma, cfg, trial_cost);
        ++report.iterations;
        report.line_search_counts.push_back(ls.evaluations);

        if (ls.status == LineSearchStatus::failed) {
            report.line_search_failed = true;
            report.step_history.push_back(0.0);
            report.cost_history.push_back(cost);
            report.stop_reason = DalStopReason::stationarity;
            break;
        }

        const double previous = cost;
        if (ls.status == LineSearchStatus::accepted) {
            StateTrajectory accepted = cache.take(ls.control);
            states = accepted.states.empty() ? integrate_forward(image, ls.control, cfg.kernel)
                                             : std::move(accepted);
            ctrl = std::move(ls.control);
            cost = ls.cost;
            sigma = ls.sigma;
            grad = adjoint_gradient(states, ctrl, terminal_seed(problem, states.terminal()),
                                    cfg.kernel);
        }
        report.step_history.push_back(ls.status == LineSearchStatus::accepted ? ls.sigma : 0.0);
        report.cost_history.push_back(cost);

        const double change = std::abs(cost - previous);
        const bool stationary = previous == 0.0 ? change < cfg.eta : change / previous < cfg.eta;
        if (stationary) {
            report.stop_reason = DalStopReason::stationarity;
            break;
        }
    }

    report.final_control = std::move(ctrl);
    report.final_state = std::move(states);
    report.final_gradient = std::move(grad);
    measure_stationarity(report, cfg.bounds);
    return report;
}

} // namespace agentseg
