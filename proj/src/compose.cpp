#include "drough/compose.hpp"

#include <stdexcept>
#include <string>

namespace drough {

namespace {

// local index into q of p's node t shifted by the delay
std::int64_t q_node_for(const DelayedControlledPath& p, const DelayedControlledPath& q,
                        std::int64_t t) {
    const std::int64_t abs = p.grid.abs_index(t) - p.grid.delay_steps;
    const std::int64_t local = abs - q.grid.i0;
    if (local < 0 || local >= q.grid.n)
        throw std::invalid_argument(
            "compose: q does not cover [t - r] for all t (interval mismatch)");
    return local;
}

}  // namespace

DelayedControlledVector compose(const NonlinearitySpec& G, const DelayedControlledPath& p,
                                const DelayedControlledPath& q) {
    if (p.driver.get() != q.driver.get())
        throw std::invalid_argument("compose: p and q must be controlled by the same driver");
    const int n_out = G.n_out;
    const int d = p.d;
    const std::int64_t n = p.grid.n;

    DelayedControlledVector out;
    out.comp.reserve(static_cast<std::size_t>(n_out));
    for (int i = 0; i < n_out; ++i) {
        DelayedControlledPath c;
        c.grid = p.grid;
        c.theta = p.theta - G.sigma;
        c.d = d;
        c.driver = p.driver;
        c.y.resize(static_cast<std::size_t>(n));
        c.y_prime.assign(static_cast<std::size_t>(n), std::vector<SpectralVector>(
                                                          static_cast<std::size_t>(d)));
        c.ybar_prime = c.y_prime;
        out.comp.push_back(std::move(c));
    }

    for (std::int64_t t = 0; t < n; ++t) {
        const std::int64_t tq = q_node_for(p, q, t);
        const SpectralVector& yt = p.y[static_cast<std::size_t>(t)];
        const SpectralVector& zt = q.y[static_cast<std::size_t>(tq)];
        const auto val = eval_G(G, yt, zt);
        for (int i = 0; i < n_out; ++i)
            out.comp[static_cast<std::size_t>(i)].y[static_cast<std::size_t>(t)] =
                val[static_cast<std::size_t>(i)];
        for (int j = 0; j < d; ++j) {
            const auto d1 = eval_DG(G, yt, zt, p.yp(t, j), 1);
            const auto d2 = eval_DG(G, yt, zt, q.yp(tq, j), 2);
            for (int i = 0; i < n_out; ++i) {
                auto& comp = out.comp[static_cast<std::size_t>(i)];
                comp.y_prime[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] =
                    d1[static_cast<std::size_t>(i)];
                comp.ybar_prime[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] =
                    d2[static_cast<std::size_t>(i)];
            }
        }
    }
    return out;
}

DelayedControlledVector compose_self_derivative(const NonlinearitySpec& G,
                                                const DelayedControlledPath& p,
                                                const DelayedControlledPath& q,
                                                double check_tol) {
    if (G.n_out != p.d)
        throw std::invalid_argument("compose_self_derivative: G must have d components");
    for (std::int64_t t = 0; t < p.grid.n; ++t) {
        const std::int64_t tq = q_node_for(p, q, t);
        const auto want = eval_G(G, p.y[static_cast<std::size_t>(t)],
                                 q.y[static_cast<std::size_t>(tq)]);
        for (int i = 0; i < p.d; ++i) {
            const double err =
                sobolev_norm(p.yp(t, i) - want[static_cast<std::size_t>(i)], p.theta);
            if (err > check_tol * (1.0 + sobolev_norm(want[static_cast<std::size_t>(i)], p.theta)))
                throw std::invalid_argument(
                    "compose_self_derivative: y' != G(y, z_delay) first at node " +
                    std::to_string(t) + ", component " + std::to_string(i));
        }
    }
    return compose(G, p, q);
}

ComposeDifferenceReport compose_difference(const NonlinearitySpec& G,
                                           const DelayedControlledPath& p,
                                           const DelayedControlledPath& q,
                                           const DelayedControlledPath& u,
                                           const DelayedControlledPath& v, double alpha,
                                           double theta) {
    const auto m = compose(G, p, q);
    const auto l = compose(G, u, v);
    double diff = 0.0;
    for (int i = 0; i < m.d(); ++i) {
        DelayedControlledPath dpath = m.comp[static_cast<std::size_t>(i)];
        const auto& lc = l.comp[static_cast<std::size_t>(i)];
        for (std::int64_t t = 0; t < dpath.grid.n; ++t) {
            dpath.y[static_cast<std::size_t>(t)] -= lc.y[static_cast<std::size_t>(t)];
            for (int j = 0; j < dpath.d; ++j) {
                dpath.y_prime[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] -=
                    lc.yp(t, j);
                dpath.ybar_prime[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] -=
                    lc.ybp(t, j);
            }
        }
        diff += controlled_norm(dpath, alpha, theta - G.sigma).total;
    }

    const auto metrics_p = driver_metrics(*p.driver, alpha);
    const double rho1 = metrics_p.path_holder + metrics_p.area_holder;  // non-delayed rho over I
    const double bracket = 1.0 + 2.0 * rho1;
    const double input_dist = controlled_distance(p, u, alpha, alpha, theta) +
                              controlled_distance(q, v, alpha, alpha, theta);
    const double norms = 1.0 + controlled_norm(p, alpha, theta).total +
                         controlled_norm(q, alpha, theta).total +
                         controlled_norm(u, alpha, theta).total +
                         controlled_norm(v, alpha, theta).total;
    ComposeDifferenceReport rep;
    rep.diff_norm = diff;
    rep.rhs = bracket * bracket * input_dist * norms * norms;
    rep.ratio = (rep.rhs == 0.0) ? 0.0 : diff / rep.rhs;
    return rep;
}

}  // namespace drough
