#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "agentseg/grid.hpp"

namespace agentseg {

struct Cluster {
    double mean = 0.0;
    std::size_t count = 0;
};

/// Intensity clusters, sorted by ascending mean.
struct ClusterReport {
    std::vector<Cluster> clusters;

    std::size_t count() const noexcept { return clusters.size(); }
};

/// Sorts all values and opens a new cluster wherever two consecutive values
/// differ by more than `gap`. Purely 1-D in intensity; spatial adjacency is
/// ignored. Throws ParameterError for gap <= 0.
ClusterReport cluster_count(const ScalarField& c, double gap);

void write_cluster_report(std::ostream& os, const ClusterReport& report);

} // namespace agentseg
