#pragma once

#include <array>
#include <vector>

#include "agentseg/dal.hpp"
#include "agentseg/grid.hpp"

namespace agentseg {

/// Closed-form argmin over w of (rho/2)|w - a|^2 + |w|:
/// zero when |a| <= 1/rho, otherwise (|a| - 1/rho) a/|a|.
std::array<double, 2> shrink(std::array<double, 2> a, double rho);

/// Per-pixel shrink of gradient(c_T) - mu/rho.
VectorField update_v(const ScalarField& c_terminal, const VectorField& mu, double rho,
                     const GridGeometry& geo);

/// mu + gamma (v - grad c_T).
VectorField update_mu(const VectorField& mu, const VectorField& v, const VectorField& grad_terminal,
                      double gamma);

/// sqrt(int |v - grad c_T|^2) with the shared rectangular quadrature.
double primal_residual(const VectorField& v, const VectorField& grad_terminal);

struct AdmmConfig {
    double rho = 1e-2;
    double gamma = 1e-2;
    double primal_tol = 1e-3;
    int max_outer = 50;
    DalConfig inner = default_inner();

    static DalConfig default_inner() {
        DalConfig cfg;
        cfg.max_iters = 50;
        return cfg;
    }
    void validate() const;
};

enum class AdmmStopReason { primal_tolerance, max_outer };

struct AdmmReport {
    int outer_iterations = 0;
    std::vector<double> primal_residual_history;
    std::vector<double> objective_history;       // completed-square objective after each v-update
    std::vector<int> inner_iterations;
    std::vector<std::vector<double>> inner_cost_histories;  // one DAL cost history per outer step
    ControlTrajectory final_control;
    StateTrajectory final_state;
    VectorField v;
    VectorField mu;
    AdmmStopReason stop_reason = AdmmStopReason::max_outer;
};

AdmmReport admm_solve(const ImageGrid& image, const AdmmConfig& cfg);

} // namespace agentseg
