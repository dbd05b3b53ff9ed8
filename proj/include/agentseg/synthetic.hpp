#pragma once

#include <cstdint>

#include "agentseg/grid.hpp"

namespace agentseg {

/// Left half at `low`, right half at `high`, each pixel perturbed by
/// uniform noise in [-noise, noise] (mt19937_64 seeded with `seed`) and
/// clamped to [0, 1].
ImageGrid make_two_plateau(int width, int height, double low = 0.25, double high = 0.75,
                           double noise = 0.05, std::uint64_t seed = 20240601);

/// Independent uniform [0, 1] values.
ImageGrid make_uniform_random(int width, int height, std::uint64_t seed);

} // namespace agentseg
