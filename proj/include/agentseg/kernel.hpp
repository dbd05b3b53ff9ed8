#pragma once

#include <string_view>

#include "agentseg/control.hpp"

namespace agentseg {

/// Interaction kernel profile, supported on r in [0, 1].
///
/// standard_wendland is the C2 Wendland function (4r + 1)(1 - r)^4: positive,
/// monotone, phi(0) = 1. paper_printed is (4r - 1)(1 - r)^4, which is
/// repulsive for r < 1/4; it is kept only for side-by-side comparison.
enum class KernelKind { standard_wendland, paper_printed };

KernelKind parse_kernel_kind(std::string_view name);
std::string_view to_string(KernelKind kind) noexcept;

/// Throws std::domain_error for r < 0 (or NaN).
double kernel_phi(double r, KernelKind kind);
double kernel_dphi(double r, KernelKind kind);

/// Ellipsoidal distance (eps_x / 2)|dx|^2 + (eps_c / 2) dc^2.
inline double pair_distance(double spatial_sq, double dc, ControlPair eps) noexcept {
    return (0.5 * eps.eps_x) * spatial_sq + (0.5 * eps.eps_c) * (dc * dc);
}

namespace detail {

// Unchecked, branch-free evaluation for hot loops; caller guarantees 0 <= r.
// Outside the support the result is a signed zero, so adding it to an
// accumulator is a no-op.
template <KernelKind K>
inline double phi(double r) noexcept {
    const double s = r < 1.0 ? 1.0 - r : 0.0;
    const double s2 = s * s;
    if constexpr (K == KernelKind::standard_wendland) {
        return (4.0 * r + 1.0) * (s2 * s2);
    } else {
        return (4.0 * r - 1.0) * (s2 * s2);
    }
}

template <KernelKind K>
inline double dphi(double r) noexcept {
    const double s = r < 1.0 ? 1.0 - r : 0.0;
    const double s3 = s * s * s;
    if constexpr (K == KernelKind::standard_wendland) {
        return -20.0 * r * s3;
    } else {
        // d/dr (4r - 1)(1 - r)^4 = (1 - r)^3 (8 - 20 r)
        return (8.0 - 20.0 * r) * s3;
    }
}

} // namespace detail
} // namespace agentseg
