#pragma once

#include <cstddef>
#include <vector>

#include "agentseg/control.hpp"
#include "agentseg/grid.hpp"
#include "agentseg/kernel.hpp"

// Pixel-agent consensus dynamics
//
//   dc_i/dt = (1/N) sum_j phi(r_ij) (c_j - c_i),
//   r_ij    = (eps_x/2)|p_j - p_i|^2 + (eps_c/2)(c_j - c_i)^2,
//
// with pixel positions p_i fixed on the unit square. Every kernel in this
// header is data-parallel over destination pixels (OpenMP) and visits
// sources in increasing pixel index, so results are bit-identical for any
// thread count. Sources are pruned to the spatial window where r < 1 is
// still possible; agentseg::reference holds the all-pairs serial versions.

namespace agentseg {

/// Colour field at every time node c^0 .. c^M.
struct StateTrajectory {
    GridGeometry geometry;
    std::vector<ScalarField> states;

    std::size_t steps() const noexcept { return states.empty() ? 0 : states.size() - 1; }
    const ScalarField& initial() const { return states.front(); }
    const ScalarField& terminal() const { return states.back(); }
};

ScalarField rhs(const ScalarField& c, ControlPair eps,
                KernelKind kind = KernelKind::standard_wendland);

/// Explicit Euler: c^{m+1} = c^m + dt * rhs(c^m, eps^m).
/// Throws IntegrationDiverged carrying the first step with a non-finite value.
StateTrajectory integrate_forward(const ImageGrid& img, const ControlTrajectory& ctrl,
                                  KernelKind kind = KernelKind::standard_wendland);

/// (dF/dc) lambda. The Jacobian is symmetric with zero row sums: off-diagonal
/// (1/N)[phi'(r_ik) eps_c (c_k - c_i)^2 + phi(r_ik)], diagonal minus the
/// off-diagonal row sum.
ScalarField jacobian_vector_product(const ScalarField& c, ControlPair eps,
                                    const ScalarField& lambda,
                                    KernelKind kind = KernelKind::standard_wendland);

/// Per-pixel sensitivities dF_i/d(eps_x) and dF_i/d(eps_c).
struct ControlSensitivity {
    ScalarField d_eps_x;
    ScalarField d_eps_c;
};

ControlSensitivity df_deps(const ScalarField& c, ControlPair eps,
                           KernelKind kind = KernelKind::standard_wendland);

/// One backward sweep step fused into a single pass over the pairs:
/// the Jacobian product and the pairings sum_i lambda_i dF_i/d(eps).
struct AdjointStep {
    ScalarField jacobian_product;
    double pairing_x = 0.0;
    double pairing_c = 0.0;
};

AdjointStep adjoint_step(const ScalarField& c, ControlPair eps, const ScalarField& lambda,
                         KernelKind kind = KernelKind::standard_wendland);

/// Largest column offset per row offset that can still interact, given
/// eps_x. Exposed for tests and the benchmark.
struct NeighborWindow {
    int row_reach = 0;
    std::vector<int> col_reach;  // indexed by row offset + row_reach; -1 = row unreachable

    static NeighborWindow build(const GridGeometry& geo, double eps_x);
    std::size_t candidate_count() const noexcept;
};

} // namespace agentseg
