#include "agentseg/reference.hpp"

#include <cmath>
#include <vector>

#include "agentseg/error.hpp"

namespace agentseg::reference {

namespace {

struct Agents {
    std::vector<double> x;
    std::vector<double> y;
};

Agents positions(const ScalarField& c) {
    const GridGeometry geo = c.geometry();
    Agents a;
    a.x.resize(c.size());
    a.y.resize(c.size());
    for (int j = 0; j < geo.height; ++j) {
        for (int i = 0; i < geo.width; ++i) {
            a.x[c.index(i, j)] = geo.x(i);
            a.y[c.index(i, j)] = geo.y(j);
        }
    }
    return a;
}

double spatial_sq(const Agents& a, std::size_t i, std::size_t j) {
    const double dx = a.x[j] - a.x[i];
    const double dy = a.y[j] - a.y[i];
    return dx * dx + dy * dy;
}

} // namespace

ScalarField rhs(const ScalarField& c, ControlPair eps, KernelKind kind) {
    const Agents a = positions(c);
    const std::size_t n = c.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    ScalarField out(c.width(), c.height());
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double dc = c[j] - c[i];
            const double r = pair_distance(spatial_sq(a, i, j), dc, eps);
            acc += kernel_phi(r, kind) * dc;
        }
        out[i] = acc * inv_n;
    }
    return out;
}

ScalarField jacobian_vector_product(const ScalarField& c, ControlPair eps,
                                    const ScalarField& lambda, KernelKind kind) {
    require_same_shape(c, lambda, "reference::jacobian_vector_product");
    const Agents a = positions(c);
    const std::size_t n = c.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    ScalarField out(c.width(), c.height());
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) {
        double diag = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            const double dc = c[k] - c[i];
            const double r = pair_distance(spatial_sq(a, i, k), dc, eps);
            row[k] = inv_n * (kernel_dphi(r, kind) * eps.eps_c * dc * dc + kernel_phi(r, kind));
            diag -= row[k];
        }
        row[i] = diag;
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += row[k] * lambda[k];
        out[i] = acc;
    }
    return out;
}

ControlSensitivity df_deps(const ScalarField& c, ControlPair eps, KernelKind kind) {
    const Agents a = positions(c);
    const std::size_t n = c.size();
    const double scale = 1.0 / (2.0 * static_cast<double>(n));
    ControlSensitivity out{ScalarField(c.width(), c.height()), ScalarField(c.width(), c.height())};
    for (std::size_t i = 0; i < n; ++i) {
        double sx = 0.0;
        double sc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double dc = c[j] - c[i];
            const double d2 = spatial_sq(a, i, j);
            const double dp = kernel_dphi(pair_distance(d2, dc, eps), kind);
            sx += dp * d2 * dc;
            sc += dp * dc * dc * dc;
        }
        out.d_eps_x[i] = sx * scale;
        out.d_eps_c[i] = sc * scale;
    }
    return out;
}

StateTrajectory integrate_forward(const ImageGrid& img, const ControlTrajectory& ctrl,
                                  KernelKind kind) {
    StateTrajectory traj;
    traj.geometry = img.geometry();
    traj.states.push_back(img.field());
    for (std::size_t m = 0; m < ctrl.steps(); ++m) {
        const ScalarField& cur = traj.states.back();
        const ScalarField f = reference::rhs(cur, ctrl.pairs[m], kind);
        ScalarField next = cur;
        for (std::size_t k = 0; k < next.size(); ++k) {
            next[k] = cur[k] + ctrl.dt * f[k];
            if (!std::isfinite(next[k])) throw IntegrationDiverged(m + 1);
        }
        traj.states.push_back(std::move(next));
    }
    return traj;
}

} // namespace agentseg::reference
