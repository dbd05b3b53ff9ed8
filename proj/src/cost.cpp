#include "agentseg/cost.hpp"

#include <cmath>

#include "agentseg/error.hpp"
#include "agentseg/operators.hpp"

namespace agentseg {

namespace {

void check_positive(double value, const char* name) {
    if (!(value > 0.0)) throw ParameterError(std::string(name) + " must be positive");
}

double fidelity(const ScalarField& u, const ImageGrid& image, double alpha) {
    require_same_shape(u, image.field(), "cost fidelity");
    const ScalarField& img = image.field();
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double d = u[k] - img[k];
        s += 0.5 * alpha * d * d;
    }
    return s * u.geometry().cell_area();
}

CostBreakdown finalize(CostBreakdown c) {
    c.total = c.smoothness + c.fidelity + c.coupling + c.penalty;
    return c;
}

} // namespace

double integrate(const ScalarField& integrand) {
    return sum(integrand.values()) * integrand.geometry().cell_area();
}

CostBreakdown cost_quadratic(const ScalarField& u, const ImageGrid& image, double alpha) {
    check_positive(alpha, "alpha");
    const GridGeometry geo = u.geometry();
    const VectorField g = gradient(u, geo);
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) s += 0.5 * (g.x[k] * g.x[k] + g.y[k] * g.y[k]);
    CostBreakdown c;
    c.smoothness = s * geo.cell_area();
    c.fidelity = fidelity(u, image, alpha);
    return finalize(c);
}

CostBreakdown cost_tv(const ScalarField& u, const ImageGrid& image, double alpha) {
    check_positive(alpha, "alpha");
    const GridGeometry geo = u.geometry();
    const VectorField g = gradient(u, geo);
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) s += std::hypot(g.x[k], g.y[k]);
    CostBreakdown c;
    c.smoothness = s * geo.cell_area();
    c.fidelity = fidelity(u, image, alpha);
    return finalize(c);
}

CostBreakdown cost_lagrangian(const ScalarField& u, const VectorField& v, const VectorField& mu,
                              const ImageGrid& image, double alpha, double rho) {
    check_positive(alpha, "alpha");
    check_positive(rho, "rho");
    require_same_shape(u, v.x, "cost_lagrangian (v)");
    require_same_shape(u, mu.x, "cost_lagrangian (mu)");
    const GridGeometry geo = u.geometry();
    const VectorField g = gradient(u, geo);
    double norm_v = 0.0;
    double coupling = 0.0;
    double penalty = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double rx = v.x[k] - g.x[k];
        const double ry = v.y[k] - g.y[k];
        norm_v += std::hypot(v.x[k], v.y[k]);
        coupling += mu.x[k] * rx + mu.y[k] * ry;
        penalty += 0.5 * rho * (rx * rx + ry * ry);
    }
    const double area = geo.cell_area();
    CostBreakdown c;
    c.smoothness = norm_v * area;
    c.coupling = coupling * area;
    c.penalty = penalty * area;
    c.fidelity = fidelity(u, image, alpha);
    return finalize(c);
}

CostBreakdown cost_admm_objective(const ScalarField& u, const VectorField& v, const VectorField& mu,
                                  const ImageGrid& image, double alpha, double rho) {
    check_positive(alpha, "alpha");
    check_positive(rho, "rho");
    require_same_shape(u, v.x, "cost_admm_objective (v)");
    require_same_shape(u, mu.x, "cost_admm_objective (mu)");
    const GridGeometry geo = u.geometry();
    const VectorField g = gradient(u, geo);
    double norm_v = 0.0;
    double penalty = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double sx = v.x[k] - g.x[k] + mu.x[k] / rho;
        const double sy = v.y[k] - g.y[k] + mu.y[k] / rho;
        norm_v += std::hypot(v.x[k], v.y[k]);
        penalty += 0.5 * rho * (sx * sx + sy * sy);
    }
    const double area = geo.cell_area();
    CostBreakdown c;
    c.smoothness = norm_v * area;
    c.penalty = penalty * area;
    c.fidelity = fidelity(u, image, alpha);
    return finalize(c);
}

} // namespace agentseg
