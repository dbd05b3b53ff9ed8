#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "agentseg/control.hpp"
#include "agentseg/grid.hpp"

namespace agentseg::testing {

inline ScalarField random_field(int w, int h, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(static_cast<std::size_t>(w) * h);
    for (double& x : v) x = d(rng);
    return ScalarField(w, h, std::move(v));
}

inline VectorField random_vector_field(int w, int h, std::uint64_t seed) {
    return VectorField(random_field(w, h, seed), random_field(w, h, seed + 7919));
}

inline ImageGrid random_image(int w, int h, std::uint64_t seed) {
    return ImageGrid(random_field(w, h, seed, 0.0, 1.0));
}

inline ControlTrajectory random_controls(std::size_t steps, double dt, std::uint64_t seed,
                                         double lo, double hi) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(lo, hi);
    ControlTrajectory t{dt, {}};
    for (std::size_t m = 0; m < steps; ++m) t.pairs.push_back({d(rng), d(rng)});
    return t;
}

inline double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        m = std::max(m, d < 0 ? -d : d);
    }
    return m;
}

inline double max_abs(const ScalarField& a) {
    double m = 0.0;
    for (double x : a.values()) m = std::max(m, x < 0 ? -x : x);
    return m;
}

} // namespace agentseg::testing
