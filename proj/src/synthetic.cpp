#include "agentseg/synthetic.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace agentseg {

ImageGrid make_two_plateau(int width, int height, double low, double high, double noise,
                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-noise, noise);
    std::vector<double> values(static_cast<std::size_t>(width) * height);
    for (int j = 0; j < height; ++j) {
        for (int i = 0; i < width; ++i) {
            const double level = 2 * i < width ? low : high;
            values[static_cast<std::size_t>(j) * width + i] =
                std::clamp(level + jitter(rng), 0.0, 1.0);
        }
    }
    return ImageGrid(width, height, std::move(values));
}

ImageGrid make_uniform_random(int width, int height, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> values(static_cast<std::size_t>(width) * height);
    for (double& v : values) v = unit(rng);
    return ImageGrid(width, height, std::move(values));
}

} // namespace agentseg
