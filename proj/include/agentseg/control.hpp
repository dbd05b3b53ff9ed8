#pragma once

#include <cstddef>
#include <vector>

namespace agentseg {

/// Spatial and colour scaling of the interaction distance at one time step.
struct ControlPair {
    double eps_x = 0.0;
    double eps_c = 0.0;

    bool operator==(const ControlPair&) const = default;
};

/// Admissible box E = [eps_x_min, eps_x_max] x [eps_c_min, eps_c_max].
struct ControlBounds {
    double eps_x_min = 2.0;
    double eps_x_max = 1100.0;
    double eps_c_min = 2.0;
    double eps_c_max = 1100.0;

    static ControlBounds square(double lo, double hi) { return {lo, hi, lo, hi}; }

    /// Throws ParameterError unless 0 <= min <= max (finite) on both axes.
    void validate() const;
    bool contains(ControlPair p) const noexcept;
    ControlPair clamp(ControlPair p) const noexcept;
};

/// Piecewise-constant controls on the uniform grid t_m = m * dt.
struct ControlTrajectory {
    double dt = 0.25;
    std::vector<ControlPair> pairs;

    static ControlTrajectory constant(double dt, std::size_t steps, ControlPair value) {
        return {dt, std::vector<ControlPair>(steps, value)};
    }

    std::size_t steps() const noexcept { return pairs.size(); }
    double horizon() const noexcept { return dt * static_cast<double>(pairs.size()); }
    bool within(const ControlBounds& bounds) const noexcept;

    bool operator==(const ControlTrajectory&) const = default;
};

/// Number of Euler steps covering [0, horizon]; throws ParameterError unless
/// horizon / dt is a positive integer (to 1e-9 relative).
std::size_t steps_for_horizon(double horizon, double dt);

} // namespace agentseg
