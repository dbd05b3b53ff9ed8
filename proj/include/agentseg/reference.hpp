#pragma once

#include "agentseg/dynamics.hpp"

// Serial all-pairs kernels written straight from the formulas, with the
// Jacobian diagonal formed explicitly. They define what the parallel pruned
// kernels in dynamics.hpp must reproduce and serve as the baseline in the
// benchmark. O(N^2) per call.

namespace agentseg::reference {

ScalarField rhs(const ScalarField& c, ControlPair eps, KernelKind kind);

ScalarField jacobian_vector_product(const ScalarField& c, ControlPair eps,
                                    const ScalarField& lambda, KernelKind kind);

ControlSensitivity df_deps(const ScalarField& c, ControlPair eps, KernelKind kind);

StateTrajectory integrate_forward(const ImageGrid& img, const ControlTrajectory& ctrl,
                                  KernelKind kind);

} // namespace agentseg::reference
