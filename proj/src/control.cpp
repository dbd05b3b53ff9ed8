#include "agentseg/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "agentseg/error.hpp"

namespace agentseg {

void ControlBounds::validate() const {
    auto axis_ok = [](double lo, double hi) {
        return std::isfinite(lo) && std::isfinite(hi) && lo >= 0.0 && lo <= hi;
    };
    if (!axis_ok(eps_x_min, eps_x_max) || !axis_ok(eps_c_min, eps_c_max)) {
        throw ParameterError("control bounds must satisfy 0 <= min <= max on both axes");
    }
}

bool ControlBounds::contains(ControlPair p) const noexcept {
    return p.eps_x >= eps_x_min && p.eps_x <= eps_x_max && p.eps_c >= eps_c_min &&
           p.eps_c <= eps_c_max;
}

ControlPair ControlBounds::clamp(ControlPair p) const noexcept {
    return {std::clamp(p.eps_x, eps_x_min, eps_x_max), std::clamp(p.eps_c, eps_c_min, eps_c_max)};
}

bool ControlTrajectory::within(const ControlBounds& bounds) const noexcept {
    return std::all_of(pairs.begin(), pairs.end(),
                       [&](ControlPair p) { return bounds.contains(p); });
}

std::size_t steps_for_horizon(double horizon, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("dt must be positive");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ParameterError("T must be positive");
    const double ratio = horizon / dt;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
        throw ParameterError("dt = " + std::to_string(dt) + " does not divide T = " +
                             std::to_string(horizon) + " into a whole number of steps");
    }
    return static_cast<std::size_t>(rounded);
}

} // namespace agentseg
