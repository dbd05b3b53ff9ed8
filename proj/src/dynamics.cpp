#include "agentseg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "agentseg/error.hpp"

namespace agentseg {

NeighborWindow NeighborWindow::build(const GridGeometry& geo, double eps_x) {
    NeighborWindow win;
    const int max_dx = geo.width - 1;
    const int max_dy = geo.height - 1;
    const double span_x = max_dx * geo.hx;
    const double span_y = max_dy * geo.hy;
    const double diag2 = span_x * span_x + span_y * span_y;

    if (!(eps_x > 0.0) || 2.0 / eps_x >= diag2) {
        win.row_reach = max_dy;
        win.col_reach.assign(2 * max_dy + 1, max_dx);
        return win;
    }

    // Pairs interact only if (eps_x / 2) d^2 < 1. The relative slack and the
    // extra pixel of reach keep rounding from dropping a pair with r just below 1.
    const double cutoff2 = (2.0 / eps_x) * (1.0 + 1e-12);
    win.row_reach = std::min(max_dy, static_cast<int>(std::floor(std::sqrt(cutoff2) / geo.hy)) + 1);
    win.col_reach.resize(2 * win.row_reach + 1);
    for (int d = -win.row_reach; d <= win.row_reach; ++d) {
        const double dy = d * geo.hy;
        const double rem = cutoff2 - dy * dy;
        win.col_reach[d + win.row_reach] =
            rem < 0.0 ? -1
                      : std::min(max_dx, static_cast<int>(std::floor(std::sqrt(rem) / geo.hx)) + 1);
    }
    return win;
}

std::size_t NeighborWindow::candidate_count() const noexcept {
    std::size_t n = 0;
    for (int r : col_reach) n += r < 0 ? 0 : static_cast<std::size_t>(2 * r + 1);
    return n;
}

namespace {

template <class F>
decltype(auto) with_kernel(KernelKind kind, F&& f) {
    if (kind == KernelKind::standard_wendland) {
        return f(std::integral_constant<KernelKind, KernelKind::standard_wendland>{});
    }
    return f(std::integral_constant<KernelKind, KernelKind::paper_printed>{});
}

// For every destination pixel k (in parallel), calls
//   row(acc, k, row_start, ilo, ihi, dy2)
// once per reachable source row, in increasing row order; sources in that
// row are row_start + [ilo, ihi]. Then finish(k, acc). The row callbacks
// run an `omp simd` reduction whose lane order is fixed at compile time, so
// results do not depend on the thread count.
template <class Acc, class Row, class Finish>
void sweep(const ScalarField& c, ControlPair eps, Row&& row, Finish&& finish) {
    const GridGeometry geo = c.geometry();
    const NeighborWindow win = NeighborWindow::build(geo, eps.eps_x);
    const int w = geo.width;
    const int h = geo.height;
    const long n = static_cast<long>(c.size());
    const int reach = win.row_reach;
    const int* cols = win.col_reach.data();

#pragma omp parallel for schedule(static)
    for (long k = 0; k < n; ++k) {
        const int i0 = static_cast<int>(k % w);
        const int j0 = static_cast<int>(k / w);
        const double yi = geo.y(j0);
        Acc acc{};
        const int jlo = std::max(0, j0 - reach);
        const int jhi = std::min(h - 1, j0 + reach);
        for (int jj = jlo; jj <= jhi; ++jj) {
            const int cr = cols[jj - j0 + reach];
            if (cr < 0) continue;
            const double dy = geo.y(jj) - yi;
            row(acc, static_cast<std::size_t>(k), static_cast<std::size_t>(jj) * w,
                std::max(0, i0 - cr), std::min(w - 1, i0 + cr), dy * dy);
        }
        finish(static_cast<std::size_t>(k), acc);
    }
}

struct FusedAcc {
    double jac = 0.0;
    double sx = 0.0;
    double sc = 0.0;
};

void check_control(ControlPair eps) {
    if (!(eps.eps_x >= 0.0) || !(eps.eps_c >= 0.0) || !std::isfinite(eps.eps_x) ||
        !std::isfinite(eps.eps_c)) {
        throw ParameterError("controls must be finite and non-negative");
    }
}

} // namespace

ScalarField rhs(const ScalarField& c, ControlPair eps, KernelKind kind) {
    check_control(eps);
    ScalarField out(c.width(), c.height());
    const double inv_n = 1.0 / static_cast<double>(c.size());
    const double* cv = c.values().data();
    const double hx = c.geometry().hx;
    const int w = c.width();
    with_kernel(kind, [&](auto tag) {
        constexpr KernelKind K = decltype(tag)::value;
        sweep<double>(
            c, eps,
            [&](double& acc, std::size_t k, std::size_t row, int ilo, int ihi, double dy2) {
                const double ci = cv[k];
                const ControlPair e = eps;
                const double step = hx;
                const double xi = static_cast<int>(k % w) * hx;
                const double* src = cv + row;
                double a = acc;
#pragma omp simd reduction(+ : a)
                for (int ii = ilo; ii <= ihi; ++ii) {
                    const double dx = ii * step - xi;
                    const double dc = src[ii] - ci;
                    const double r = pair_distance(dx * dx + dy2, dc, e);
                    a += detail::phi<K>(r) * dc;
                }
                acc = a;
            },
            [&](std::size_t k, double acc) { out[k] = acc * inv_n; });
    });
    return out;
}

StateTrajectory integrate_forward(const ImageGrid& img, const ControlTrajectory& ctrl,
                                  KernelKind kind) {
    if (!(ctrl.dt > 0.0) || !std::isfinite(ctrl.dt)) throw ParameterError("dt must be positive");
    StateTrajectory traj;
    traj.geometry = img.geometry();
    traj.states.reserve(ctrl.steps() + 1);
    traj.states.push_back(img.field());
    for (std::size_t m = 0; m < ctrl.steps(); ++m) {
        const ScalarField& cur = traj.states.back();
        const ScalarField f = rhs(cur, ctrl.pairs[m], kind);
        ScalarField next = cur;
        bool finite = true;
        for (std::size_t k = 0; k < next.size(); ++k) {
            next[k] = cur[k] + ctrl.dt * f[k];
            finite = finite && std::isfinite(next[k]);
        }
        if (!finite) throw IntegrationDiverged(m + 1);
        traj.states.push_back(std::move(next));
    }
    return traj;
}

ScalarField jacobian_vector_product(const ScalarField& c, ControlPair eps,
                                    const ScalarField& lambda, KernelKind kind) {
    check_control(eps);
    require_same_shape(c, lambda, "jacobian_vector_product");
    ScalarField out(c.width(), c.height());
    const double inv_n = 1.0 / static_cast<double>(c.size());
    const double* cv = c.values().data();
    const double* lv = lambda.values().data();
    const double hx = c.geometry().hx;
    const int w = c.width();
    const double ec = eps.eps_c;
    with_kernel(kind, [&](auto tag) {
        constexpr KernelKind K = decltype(tag)::value;
        // Zero row sums: (J lambda)_i = sum_k J_ik (lambda_k - lambda_i).
        sweep<double>(
            c, eps,
            [&](double& acc, std::size_t k, std::size_t row, int ilo, int ihi, double dy2) {
                const double ci = cv[k];
                const ControlPair e = eps;
                const double step = hx;
                const double coupling = ec;
                const double li = lv[k];
                const double xi = static_cast<int>(k % w) * hx;
                const double* src = cv + row;
                const double* lam = lv + row;
                double a = acc;
#pragma omp simd reduction(+ : a)
                for (int ii = ilo; ii <= ihi; ++ii) {
                    const double dx = ii * step - xi;
                    const double dc = src[ii] - ci;
                    const double r = pair_distance(dx * dx + dy2, dc, e);
                    const double weight = detail::dphi<K>(r) * coupling * (dc * dc) + detail::phi<K>(r);
                    a += weight * (lam[ii] - li);
                }
                acc = a;
            },
            [&](std::size_t k, double acc) { out[k] = acc * inv_n; });
    });
    return out;
}

ControlSensitivity df_deps(const ScalarField& c, ControlPair eps, KernelKind kind) {
    check_control(eps);
    ControlSensitivity out{ScalarField(c.width(), c.height()), ScalarField(c.width(), c.height())};
    const double half_inv_n = 0.5 / static_cast<double>(c.size());
    const double* cv = c.values().data();
    const double hx = c.geometry().hx;
    const int w = c.width();
    with_kernel(kind, [&](auto tag) {
        constexpr KernelKind K = decltype(tag)::value;
        sweep<FusedAcc>(
            c, eps,
            [&](FusedAcc& acc, std::size_t k, std::size_t row, int ilo, int ihi, double dy2) {
                const double ci = cv[k];
                const ControlPair e = eps;
                const double step = hx;
                const double xi = static_cast<int>(k % w) * hx;
                const double* src = cv + row;
                double ax = acc.sx;
                double ac = acc.sc;
#pragma omp simd reduction(+ : ax, ac)
                for (int ii = ilo; ii <= ihi; ++ii) {
                    const double dx = ii * step - xi;
                    const double d2 = dx * dx + dy2;
                    const double dc = src[ii] - ci;
                    const double dp = detail::dphi<K>(pair_distance(d2, dc, e));
                    ax += dp * d2 * dc;
                    ac += dp * (dc * dc * dc);
                }
                acc.sx = ax;
                acc.sc = ac;
            },
            [&](std::size_t k, const FusedAcc& acc) {
                out.d_eps_x[k] = acc.sx * half_inv_n;
                out.d_eps_c[k] = acc.sc * half_inv_n;
            });
    });
    return out;
}

AdjointStep adjoint_step(const ScalarField& c, ControlPair eps, const ScalarField& lambda,
                         KernelKind kind) {
    check_control(eps);
    require_same_shape(c, lambda, "adjoint_step");
    const std::size_t n = c.size();
    AdjointStep out{ScalarField(c.width(), c.height())};
    ScalarField sx(c.width(), c.height());
    ScalarField sc(c.width(), c.height());
    const double inv_n = 1.0 / static_cast<double>(n);
    const double half_inv_n = 0.5 * inv_n;
    const double* cv = c.values().data();
    const double* lv = lambda.values().data();
    const double hx = c.geometry().hx;
    const int w = c.width();
    const double ec = eps.eps_c;
    with_kernel(kind, [&](auto tag) {
        constexpr KernelKind K = decltype(tag)::value;
        sweep<FusedAcc>(
            c, eps,
            [&](FusedAcc& acc, std::size_t k, std::size_t row, int ilo, int ihi, double dy2) {
                const double ci = cv[k];
                const ControlPair e = eps;
                const double step = hx;
                const double coupling = ec;
                const double li = lv[k];
                const double xi = static_cast<int>(k % w) * hx;
                const double* src = cv + row;
                const double* lam = lv + row;
                double aj = acc.jac;
                double ax = acc.sx;
                double ac = acc.sc;
#pragma omp simd reduction(+ : aj, ax, ac)
                for (int ii = ilo; ii <= ihi; ++ii) {
                    const double dx = ii * step - xi;
                    const double d2 = dx * dx + dy2;
                    const double dc = src[ii] - ci;
                    const double r = pair_distance(d2, dc, e);
                    const double p = detail::phi<K>(r);
                    const double dp = detail::dphi<K>(r);
                    aj += (dp * coupling * (dc * dc) + p) * (lam[ii] - li);
                    ax += dp * d2 * dc;
                    ac += dp * (dc * dc * dc);
                }
                acc.jac = aj;
                acc.sx = ax;
                acc.sc = ac;
            },
            [&](std::size_t k, const FusedAcc& acc) {
                out.jacobian_product[k] = acc.jac * inv_n;
                sx[k] = acc.sx * half_inv_n;
                sc[k] = acc.sc * half_inv_n;
            });
    });
    for (std::size_t i = 0; i < n; ++i) {
        out.pairing_x += lv[i] * sx[i];
        out.pairing_c += lv[i] * sc[i];
    }
    return out;
}

} // namespace agentseg
