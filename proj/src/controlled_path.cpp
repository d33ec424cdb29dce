#include "drough/controlled_path.hpp"

#include <cmath>
#include <stdexcept>

namespace drough {

std::int64_t DelayedControlledPath::driver_node(std::int64_t node, bool shift_delay) const {
    const std::int64_t abs = grid.abs_index(node) - (shift_delay ? grid.delay_steps : 0);
    const std::int64_t local = abs - driver->grid.i0;
    if (local < 0 || local >= driver->grid.n)
        throw std::out_of_range("controlled path: node outside driver grid (missing history?)");
    return local;
}

SpectralVector DelayedControlledPath::remainder_at(std::int64_t lo, std::int64_t hi) const {
    if (lo > hi) throw std::invalid_argument("remainder: reversed pair");
    SpectralVector r = y[static_cast<std::size_t>(hi)] - y[static_cast<std::size_t>(lo)];
    if (!y_prime.empty()) {
        const std::int64_t dlo = driver_node(lo), dhi = driver_node(hi);
        for (int i = 0; i < d; ++i) r.axpy(-driver->increment(dlo, dhi, i), yp(lo, i));
    }
    if (delayed()) {
        const std::int64_t dlo = driver_node(lo, true), dhi = driver_node(hi, true);
        for (int i = 0; i < d; ++i) r.axpy(-driver->increment(dlo, dhi, i), ybp(lo, i));
    }
    return r;
}

DelayedControlledPath DelayedControlledPath::zero(const Grid& g, double theta, int d,
                                                  std::shared_ptr<const DelayedRoughDriver> drv,
                                                  int max_mode, bool with_delay_slot) {
    DelayedControlledPath p;
    p.grid = g;
    p.theta = theta;
    p.d = d;
    p.driver = std::move(drv);
    p.y.assign(static_cast<std::size_t>(g.n), SpectralVector::zero(max_mode));
    p.y_prime.assign(static_cast<std::size_t>(g.n),
                     std::vector<SpectralVector>(static_cast<std::size_t>(d),
                                                 SpectralVector::zero(max_mode)));
    if (with_delay_slot) p.ybar_prime = p.y_prime;
    return p;
}

GridFn2 remainder(const DelayedControlledPath& p) {
    if (p.delayed() && p.driver->grid.i0 > p.grid.i0 - p.grid.delay_steps)
        throw std::invalid_argument("remainder: driver does not cover the delayed history");
    GridFn2 f;
    f.grid = p.grid;
    f.eval = [path = p](std::int64_t lo, std::int64_t hi) { return path.remainder_at(lo, hi); };
    return f;
}

namespace {

double sup_norm(const std::vector<SpectralVector>& vals, const SobolevWeights& w) {
    double best = 0.0;
    for (const auto& v : vals) best = std::max(best, w.norm(v));
    return best;
}

int path_max_mode(const DelayedControlledPath& p) {
    int k = 0;
    for (const auto& v : p.y) k = std::max(k, v.max_mode());
    for (const auto& tup : p.y_prime)
        for (const auto& v : tup) k = std::max(k, v.max_mode());
    for (const auto& tup : p.ybar_prime)
        for (const auto& v : tup) k = std::max(k, v.max_mode());
    return k;
}

}  // namespace

ControlledNormReport controlled_norm(const DelayedControlledPath& p, double a, double theta) {
    ControlledNormReport rep;
    const int kk = path_max_mode(p);
    const SobolevWeights w0(kk, theta);
    const SobolevWeights w1(kk, theta - a);
    const SobolevWeights w2(kk, theta - 2.0 * a);

    rep.sup_y = sup_norm(p.y, w0);

    const auto pw1 = span_pow_table(p.grid, a);
    const auto pw2 = span_pow_table(p.grid, 2.0 * a);

    if (!p.y_prime.empty()) {
        for (int i = 0; i < p.d; ++i) {
            double s = 0.0, h = 0.0;
            for (std::int64_t t = 0; t < p.n(); ++t) s = std::max(s, w1.norm(p.yp(t, i)));
            for (std::int64_t lo = 0; lo + 1 < p.n(); ++lo)
                for (std::int64_t hi = lo + 1; hi < p.n(); ++hi)
                    h = std::max(h, w2.norm(p.yp(hi, i) - p.yp(lo, i)) /
                                        pw1[static_cast<std::size_t>(hi - lo)]);
            rep.sup_yprime += s;
            rep.holder_yprime += h;
        }
    }
    if (p.delayed()) {
        for (int i = 0; i < p.d; ++i) {
            double s = 0.0, h = 0.0;
            for (std::int64_t t = 0; t < p.n(); ++t) s = std::max(s, w1.norm(p.ybp(t, i)));
            for (std::int64_t lo = 0; lo + 1 < p.n(); ++lo)
                for (std::int64_t hi = lo + 1; hi < p.n(); ++hi)
                    h = std::max(h, w2.norm(p.ybp(hi, i) - p.ybp(lo, i)) /
                                        pw1[static_cast<std::size_t>(hi - lo)]);
            rep.sup_ybarprime += s;
            rep.holder_ybarprime += h;
        }
    }
    for (std::int64_t lo = 0; lo + 1 < p.n(); ++lo)
        for (std::int64_t hi = lo + 1; hi < p.n(); ++hi) {
            const SpectralVector r = p.remainder_at(lo, hi);
            rep.holder_R_alpha =
                std::max(rep.holder_R_alpha, w1.norm(r) / pw1[static_cast<std::size_t>(hi - lo)]);
            rep.holder_R_2alpha =
                std::max(rep.holder_R_2alpha, w2.norm(r) / pw2[static_cast<std::size_t>(hi - lo)]);
        }

    rep.total = rep.sup_y + rep.sup_yprime + rep.holder_yprime + rep.sup_ybarprime +
                rep.holder_ybarprime + rep.holder_R_alpha + rep.holder_R_2alpha;
    return rep;
}

double controlled_distance(const DelayedControlledPath& p, const DelayedControlledPath& q,
                           double a_tilde, double alpha, double theta) {
    if (!p.grid.same_nodes(q.grid) || p.d != q.d)
        throw std::invalid_argument("controlled_distance: paths on different grids");
    const int kk = std::max(path_max_mode(p), path_max_mode(q));
    const SobolevWeights w0(kk, theta);
    const SobolevWeights w1(kk, theta - alpha);
    const SobolevWeights w2(kk, theta - 2.0 * alpha);
    const auto pwt = span_pow_table(p.grid, a_tilde);
    const auto pw2t = span_pow_table(p.grid, 2.0 * a_tilde);

    double sup_y = 0.0;
    for (std::int64_t t = 0; t < p.n(); ++t)
        sup_y = std::max(sup_y, w0.norm(p.y[static_cast<std::size_t>(t)] -
                                        q.y[static_cast<std::size_t>(t)]));

    auto tuple_terms = [&](bool bar, double& sup_out, double& hol_out) {
        const bool hp = bar ? p.delayed() : !p.y_prime.empty();
        const bool hq = bar ? q.delayed() : !q.y_prime.empty();
        if (!hp && !hq) return;
        auto get = [&](const DelayedControlledPath& path, bool has, std::int64_t t,
                       int i) -> SpectralVector {
            if (!has) return SpectralVector::zero(0);
            return bar ? path.ybp(t, i) : path.yp(t, i);
        };
        for (int i = 0; i < p.d; ++i) {
            double s = 0.0, h = 0.0;
            for (std::int64_t t = 0; t < p.n(); ++t)
                s = std::max(s, w1.norm(get(p, hp, t, i) - get(q, hq, t, i)));
            for (std::int64_t lo = 0; lo + 1 < p.n(); ++lo)
                for (std::int64_t hi = lo + 1; hi < p.n(); ++hi) {
                    const SpectralVector diff = (get(p, hp, hi, i) - get(p, hp, lo, i)) -
                                                (get(q, hq, hi, i) - get(q, hq, lo, i));
                    h = std::max(h, w2.norm(diff) / pwt[static_cast<std::size_t>(hi - lo)]);
                }
            sup_out += s;
            hol_out += h;
        }
    };

    double sup_yp = 0.0, hol_yp = 0.0, sup_ybp = 0.0, hol_ybp = 0.0;
    tuple_terms(false, sup_yp, hol_yp);
    tuple_terms(true, sup_ybp, hol_ybp);

    double r_a = 0.0, r_2a = 0.0;
    for (std::int64_t lo = 0; lo + 1 < p.n(); ++lo)
        for (std::int64_t hi = lo + 1; hi < p.n(); ++hi) {
            const SpectralVector diff = p.remainder_at(lo, hi) - q.remainder_at(lo, hi);
            r_a = std::max(r_a, w1.norm(diff) / pwt[static_cast<std::size_t>(hi - lo)]);
            r_2a = std::max(r_2a, w2.norm(diff) / pw2t[static_cast<std::size_t>(hi - lo)]);
        }

    return sup_y + sup_yp + hol_yp + sup_ybp + hol_ybp + r_a + r_2a;
}

double controlled_norm_total(const DelayedControlledVector& v, double a, double theta) {
    double s = 0.0;
    for (const auto& c : v.comp) s += controlled_norm(c, a, theta).total;
    return s;
}

double controlled_distance_total(const DelayedControlledVector& p,
                                 const DelayedControlledVector& q, double a_tilde, double alpha,
                                 double theta) {
    if (p.d() != q.d()) throw std::invalid_argument("controlled_distance_total: dim mismatch");
    double s = 0.0;
    for (int i = 0; i < p.d(); ++i)
        s += controlled_distance(p.comp[static_cast<std::size_t>(i)],
                                 q.comp[static_cast<std::size_t>(i)], a_tilde, alpha, theta);
    return s;
}

DelayedControlledPath make_history_constant(const SpectralVector& value, const Grid& hist_grid,
                                            std::shared_ptr<const DelayedRoughDriver> drv,
                                            double theta) {
    DelayedControlledPath p;
    p.grid = hist_grid;
    p.theta = theta;
    p.d = drv->d;
    p.driver = std::move(drv);
    p.y.assign(static_cast<std::size_t>(hist_grid.n), value);
    p.y_prime.assign(static_cast<std::size_t>(hist_grid.n),
                     std::vector<SpectralVector>(static_cast<std::size_t>(p.d),
                                                 SpectralVector::zero(value.max_mode())));
    return p;
}

DelayedControlledPath make_history_driver_linear(const SpectralVector& phi0,
                                                 const std::vector<SpectralVector>& c,
                                                 const Grid& hist_grid,
                                                 std::shared_ptr<const DelayedRoughDriver> drv,
                                                 double theta) {
    if (c.size() != static_cast<std::size_t>(drv->d))
        throw std::invalid_argument("make_history_driver_linear: need one direction per component");
    DelayedControlledPath p;
    p.grid = hist_grid;
    p.theta = theta;
    p.d = drv->d;
    p.driver = drv;
    p.y.reserve(static_cast<std::size_t>(hist_grid.n));
    const std::int64_t first = hist_grid.i0 - drv->grid.i0;
    for (std::int64_t t = 0; t < hist_grid.n; ++t) {
        SpectralVector v = phi0;
        for (int i = 0; i < p.d; ++i)
            v.axpy(drv->increment(first, first + t, i), c[static_cast<std::size_t>(i)]);
        p.y.push_back(std::move(v));
    }
    p.y_prime.assign(static_cast<std::size_t>(hist_grid.n), c);
    return p;
}

}  // namespace drough
