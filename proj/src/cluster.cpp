#include "agentseg/cluster.hpp"

#include <algorithm>
#include <ostream>
#include <vector>

#include "agentseg/error.hpp"

namespace agentseg {

ClusterReport cluster_count(const ScalarField& c, double gap) {
    if (!(gap > 0.0)) throw ParameterError("cluster gap must be positive");
    std::vector<double> sorted(c.values().begin(), c.values().end());
    std::sort(sorted.begin(), sorted.end());

    ClusterReport report;
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (k > 0 && sorted[k] - sorted[k - 1] > gap) {
            report.clusters.push_back({total / static_cast<double>(count), count});
            total = 0.0;
            count = 0;
        }
        total += sorted[k];
        ++count;
    }
    if (count > 0) report.clusters.push_back({total / static_cast<double>(count), count});
    return report;
}

void write_cluster_report(std::ostream& os, const ClusterReport& report) {
    const auto old_precision = os.precision(17);
    os << "count " << report.count() << "\n";
    os << "cluster mean pixels\n";
    for (std::size_t k = 0; k < report.clusters.size(); ++k) {
        os << k << " " << report.clusters[k].mean << " " << report.clusters[k].count << "\n";
    }
    os.precision(old_precision);
}

} // namespace agentseg
