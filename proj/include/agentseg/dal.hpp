#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "agentseg/adjoint.hpp"
#include "agentseg/control.hpp"
#include "agentseg/dynamics.hpp"
#include "agentseg/grid.hpp"

// Projected direct-adjoint looping: forward Euler solve, backward adjoint
// sweep, projected steepest descent with a two-way Armijo line search.

namespace agentseg {

struct DalConfig {
    double sigma0 = 1.0;        // first trial step
    double shrink = 0.5;        // b in (0, 1)
    double armijo_c = 1e-4;     // sufficient-decrease constant in (0, 1)
    double eta = 1e-10;         // relative stationarity tolerance
    int max_iters = 500;
    ControlBounds bounds{};
    ControlPair eps_init{57.0, 57.0};
    double alpha = 1.0;
    double dt = 0.25;
    std::size_t steps = 500;    // horizon T = steps * dt
    KernelKind kernel = KernelKind::standard_wendland;
    int max_shrinks = 60;

    void validate() const;
};

/// Terminal cost 1/2|grad u|^2 + alpha/2 (u - I)^2.
struct QuadraticVariant {};

/// Terminal cost rho/2 |v - grad u + mu/rho|^2 + |v| + alpha/2 (u - I)^2 with v, mu frozen.
struct TvVariant {
    VectorField v;
    VectorField mu;
    double rho = 1e-2;
};

using DalVariant = std::variant<QuadraticVariant, TvVariant>;

/// Everything the control-to-cost map needs besides the control itself.
struct DalProblem {
    const ImageGrid& image;
    double alpha;
    const DalVariant& variant;
    KernelKind kernel = KernelKind::standard_wendland;
};

double terminal_cost(const DalProblem& problem, const ScalarField& c_terminal);

/// Pixel-sum gradient of terminal_cost, i.e. the terminal_* field times the cell area.
ScalarField terminal_seed(const DalProblem& problem, const ScalarField& c_terminal);

/// Forward solve followed by terminal_cost.
double reduced_cost(const ControlTrajectory& ctrl, const DalProblem& problem);

/// Componentwise clamp into the box.
ControlTrajectory project_controls(ControlTrajectory traj, const ControlBounds& bounds);

enum class LineSearchStatus { accepted, zero_direction, failed };

struct LineSearchResult {
    double sigma = 0.0;
    ControlTrajectory control;
    double cost = 0.0;
    int evaluations = 0;
    LineSearchStatus status = LineSearchStatus::accepted;
};

/// Candidate Pi_E(eps - tau * g).
ControlTrajectory descent_candidate(const ControlTrajectory& eps, const ControlGradient& g,
                                    double tau, const ControlBounds& bounds);

/// Two-way Armijo search on J(Pi_E(eps - tau G)) <= J(eps) - c tau |G|^2.
///
/// Starting from sigma_prev, shrinks tau by cfg.shrink until the test passes
/// (at most cfg.max_shrinks times, then status = failed and eps is returned
/// unchanged), or, if the first trial already passes, grows tau by 1/shrink
/// while it keeps passing and returns the last passing step. Growth stops at
/// 2^60 * cfg.sigma0. `cost` maps a control trajectory to J; non-finite values
/// count as failures.
template <class CostFn>
LineSearchResult armijo_two_way(const ControlTrajectory& eps, double cost_eps,
                                const ControlGradient& g, double sigma_prev,
                                const DalConfig& cfg, CostFn&& cost) {
    LineSearchResult out;
    const double g2 = g.squared_norm();
    if (g2 == 0.0) {
        out.sigma = sigma_prev;
        out.control = eps;
        out.cost = cost_eps;
        out.status = LineSearchStatus::zero_direction;
        return out;
    }

    auto passes = [&](double tau, double value) {
        return std::isfinite(value) && value <= cost_eps - cfg.armijo_c * tau * g2;
    };

    double tau = sigma_prev;
    ControlTrajectory trial = descent_candidate(eps, g, tau, cfg.bounds);
    double value = cost(trial);
    ++out.evaluations;

    if (!passes(tau, value)) {
        for (int k = 0;; ++k) {
            if (k == cfg.max_shrinks) {
                out.sigma = tau;
                out.control = eps;
                out.cost = cost_eps;
                out.status = LineSearchStatus::failed;
                return out;
            }
            tau *= cfg.shrink;
            trial = descent_candidate(eps, g, tau, cfg.bounds);
            value = cost(trial);
            ++out.evaluations;
            if (passes(tau, value)) break;
        }
        out.sigma = tau;
        out.control = std::move(trial);
        out.cost = value;
        return out;
    }

    out.sigma = tau;
    out.control = trial;
    out.cost = value;
    const double ceiling = std::ldexp(cfg.sigma0, 60);
    while (tau / cfg.shrink <= ceiling) {
        tau /= cfg.shrink;
        trial = descent_candidate(eps, g, tau, cfg.bounds);
        value = cost(trial);
        ++out.evaluations;
        if (!passes(tau, value)) break;
        out.sigma = tau;
        out.control = trial;
        out.cost = value;
    }
    return out;
}

enum class DalStopReason { stationarity, max_iters };

struct DalReport {
    int iterations = 0;
    std::vector<double> cost_history;     // initial cost, then one entry per iteration
    std::vector<double> step_history;     // accepted sigma per iteration
    std::vector<int> line_search_counts;  // cost evaluations per iteration
    ControlTrajectory final_control;
    StateTrajectory final_state;
    ControlGradient final_gradient;       // gradient at final_control
    DalStopReason stop_reason = DalStopReason::max_iters;
    bool line_search_failed = false;
    /// Largest violation of the box variational inequalities at termination:
    /// g >= 0 where eps sits on a lower bound, g <= 0 on an upper bound,
    /// g = 0 strictly inside. Reported only; never enforced.
    double boundary_violation = 0.0;
    double inner_violation = 0.0;
};

DalReport dal_solve(const ImageGrid& image, const DalConfig& cfg,
                    const DalVariant& variant = QuadraticVariant{},
                    std::optional<ControlTrajectory> warm_start = std::nullopt);

} // namespace agentseg
