#include "agentseg/kernel.hpp"

#include <stdexcept>
#include <string>

#include "agentseg/error.hpp"

namespace agentseg {

namespace {

void check_radius(double r) {
    if (!(r >= 0.0)) throw std::domain_error("kernel radius must be >= 0, got " + std::to_string(r));
}

} // namespace

KernelKind parse_kernel_kind(std::string_view name) {
    if (name == "wendland" || name == "standard-wendland") return KernelKind::standard_wendland;
    if (name == "paper" || name == "paper-printed") return KernelKind::paper_printed;
    throw ParameterError("unknown kernel '" + std::string(name) + "' (expected wendland|paper)");
}

std::string_view to_string(KernelKind kind) noexcept {
    return kind == KernelKind::standard_wendland ? "wendland" : "paper";
}

double kernel_phi(double r, KernelKind kind) {
    check_radius(r);
    if (r >= 1.0) return 0.0;
    return kind == KernelKind::standard_wendland ? detail::phi<KernelKind::standard_wendland>(r)
                                                 : detail::phi<KernelKind::paper_printed>(r);
}

double kernel_dphi(double r, KernelKind kind) {
    check_radius(r);
    if (r >= 1.0) return 0.0;
    return kind == KernelKind::standard_wendland ? detail::dphi<KernelKind::standard_wendland>(r)
                                                 : detail::dphi<KernelKind::paper_printed>(r);
}

} // namespace agentseg
