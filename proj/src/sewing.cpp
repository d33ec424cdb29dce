#include "drough/sewing.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "drough/rng.hpp"

namespace drough {

namespace {

std::uint64_t pair_key(std::int64_t lo, std::int64_t hi) {
    return (static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint64_t>(hi);
}

SpectralVector partition_sum(const Germ& germ, const SemigroupSpec& sg, const Grid& grid,
                             const std::vector<std::int64_t>& nodes, GermCache* cache) {
    SpectralVector acc;
    const std::int64_t t = nodes.back();
    for (std::size_t c = 0; c + 1 < nodes.size(); ++c) {
        const std::int64_t lo = nodes[c], hi = nodes[c + 1];
        SpectralVector f;
        if (cache) {
            const auto key = pair_key(lo, hi);
            auto it = cache->find(key);
            if (it == cache->end()) it = cache->emplace(key, germ.eval(lo, hi)).first;
            f = it->second;
        } else {
            f = germ.eval(lo, hi);
        }
        acc += apply_semigroup(sg, f, double(t - lo) * grid.dt);
    }
    return acc;
}

std::vector<std::int64_t> refine_nodes(const std::vector<std::int64_t>& nodes) {
    std::vector<std::int64_t> out;
    out.reserve(nodes.size() * 2);
    for (std::size_t c = 0; c + 1 < nodes.size(); ++c) {
        out.push_back(nodes[c]);
        if (nodes[c + 1] - nodes[c] > 1) out.push_back((nodes[c] + nodes[c + 1]) / 2);
    }
    out.push_back(nodes.back());
    return out;
}

}  // namespace

SewResult sew(const Germ& germ, const SemigroupSpec& sg, const Grid& grid, std::int64_t t_node,
              int refine_levels) {
    return sew(germ, sg, grid, t_node, refine_levels, nullptr);
}

SewResult sew(const Germ& germ, const SemigroupSpec& sg, const Grid& grid, std::int64_t t_node,
              int refine_levels, GermCache* cache) {
    if (t_node < 0 || t_node >= grid.n) throw std::out_of_range("sew: t outside grid");
    if (refine_levels < 1) throw std::invalid_argument("sew: refine_levels must be >= 1");
    SewResult res;
    if (t_node == 0) {
        res.converged = true;
        return res;
    }
    const SobolevWeights w(256, germ.theta - 2.0 * germ.alpha);

    std::vector<std::int64_t> nodes = {0, t_node};
    SpectralVector prev = partition_sum(germ, sg, grid, nodes, cache);
    double prev_inc = -1.0;
    bool ever_decreased = false;
    for (int level = 1; level <= refine_levels; ++level) {
        const auto finer = refine_nodes(nodes);
        const bool at_bottom = finer.size() == nodes.size();
        nodes = finer;
        const SpectralVector cur = partition_sum(germ, sg, grid, nodes, cache);
        const double inc = w.norm(cur - prev);
        const double tol = 1e-9 * (1.0 + w.norm(cur));
        res.value = cur;
        res.last_increment = inc;
        res.levels_used = level;
        res.converged = inc <= tol;
        if (prev_inc >= 0.0 && inc < prev_inc) ever_decreased = true;
        if (at_bottom) {
            res.converged = true;  // nothing left to refine; the sum is exact on this grid
            return res;
        }
        prev = cur;
        prev_inc = inc;
    }
    // rough-driver increments fluctuate level to level, so only a sequence that
    // never decreased once over the whole run counts as failing to converge
    if (!res.converged && !ever_decreased && res.levels_used >= 3)
        throw std::runtime_error("sew: Cauchy increments fail to decrease");
    return res;
}

Germ convolution_germ(const DelayedControlledVector& integrand) {
    const auto* vec = &integrand;
    Germ g;
    g.theta = integrand.theta();
    g.eval = [vec](std::int64_t lo, std::int64_t hi) {
        const auto& drv = *vec->driver();
        const int d = vec->d();
        const auto& grid = vec->grid();
        const std::int64_t dlo = grid.abs_index(lo) - drv.grid.i0;
        const std::int64_t dhi = grid.abs_index(hi) - drv.grid.i0;
        const AreaMatrix area = drv.area(dlo, dhi);
        const bool has_delay = vec->comp.front().delayed();
        AreaMatrix darea(0);
        if (has_delay) darea = drv.delayed_area(dlo, dhi);
        SpectralVector acc;
        for (int i = 0; i < d; ++i) {
            const auto& ci = vec->comp[static_cast<std::size_t>(i)];
            acc.axpy(drv.increment(dlo, dhi, i), ci.y[static_cast<std::size_t>(lo)]);
            for (int j = 0; j < d; ++j) {
                // derivative direction j sits in the inner slot of A^{j,i}
                acc.axpy(area.at(j, i), ci.yp(lo, j));
                if (has_delay) acc.axpy(darea.at(j, i), ci.ybp(lo, j));
            }
        }
        return acc;
    };
    return g;
}

SewResult rough_convolution(const DelayedRoughDriver& drv, const DelayedControlledVector& y,
                            const SemigroupSpec& sg, std::int64_t t_node, int refine_levels) {
    if (y.driver().get() != &drv)
        throw std::invalid_argument("rough_convolution: integrand not controlled by this driver");
    Germ g = convolution_germ(y);
    int levels = refine_levels;
    if (levels < 0) {
        levels = 1;
        while ((std::int64_t(1) << levels) < t_node) ++levels;
        ++levels;  // one spare level so the bottom is certified
    }
    return sew(g, sg, y.grid(), t_node, levels);
}

std::vector<SpectralVector> convolution_series(const DelayedRoughDriver& drv,
                                               const DelayedControlledVector& y,
                                               const SemigroupSpec& sg) {
    if (y.driver().get() != &drv)
        throw std::invalid_argument("convolution_series: integrand not controlled by this driver");
    const Germ g = convolution_germ(y);
    const Grid& grid = y.grid();
    std::vector<SpectralVector> out(static_cast<std::size_t>(grid.n));
    int max_mode = 0;
    for (const auto& c : y.comp)
        for (const auto& v : c.y) max_mode = std::max(max_mode, v.max_mode());
    out[0] = SpectralVector::zero(max_mode);
    for (std::int64_t t = 1; t < grid.n; ++t) {
        SpectralVector step = out[static_cast<std::size_t>(t - 1)] + g.eval(t - 1, t);
        out[static_cast<std::size_t>(t)] = apply_semigroup(sg, step, grid.dt);
    }
    return out;
}

ExpansionFit local_expansion_error(const DelayedRoughDriver& drv,
                                   const DelayedControlledVector& y, const SemigroupSpec& sg,
                                   double alpha, double beta, int pair_sample,
                                   std::uint64_t rng_seed) {
    if (!(beta >= 0.0 && beta < 3.0 * alpha))
        throw std::invalid_argument("local_expansion_error: need 0 <= beta < 3 alpha");
    if (y.driver().get() != &drv)
        throw std::invalid_argument(
            "local_expansion_error: integrand not controlled by this driver");
    const Grid& grid = y.grid();
    const Germ g = convolution_germ(y);
    const double measure_theta = y.theta() - 2.0 * alpha + beta;
    const SobolevWeights w(256, measure_theta);

    // scale for the rounding floor
    double scale = 0.0;
    for (const auto& c : y.comp)
        for (const auto& v : c.y) scale = std::max(scale, sobolev_norm(v, y.theta()));
    scale = 1.0 + scale;

    std::mt19937_64 gen(rng_seed);
    std::vector<double> logs_x, logs_y;
    int exact_count = 0, usable = 0;
    std::int64_t span = 2;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    while (static_cast<int>(pairs.size()) < pair_sample && span < grid.n) {
        const std::int64_t lo = static_cast<std::int64_t>(gen() % std::uint64_t(grid.n - span));
        pairs.emplace_back(lo, lo + span);
        if (static_cast<std::int64_t>(pairs.size()) % 3 == 0) span *= 2;
    }
    for (auto [lo, hi] : pairs) {
        // reference: finest partition sum over [lo, hi], sum_u S_{t-u} f_{u,u+1}
        SpectralVector ref;
        for (std::int64_t c = lo; c < hi; ++c)
            ref += apply_semigroup(sg, g.eval(c, c + 1), double(hi - c) * grid.dt);
        const SpectralVector one = apply_semigroup(sg, g.eval(lo, hi), double(hi - lo) * grid.dt);
        const double err = w.norm(ref - one);
        ++usable;
        if (err < 1e-14 * scale) {
            ++exact_count;
            continue;
        }
        logs_x.push_back(std::log(double(hi - lo) * grid.dt));
        logs_y.push_back(std::log(err));
    }
    ExpansionFit fit;
    fit.pairs = usable;
    if (usable < 8) throw std::runtime_error("local_expansion_error: fewer than 8 usable pairs");
    if (exact_count > usable / 2) {
        fit.exact = true;
        fit.slope = std::numeric_limits<double>::infinity();
        return fit;
    }
    // least squares slope
    const std::size_t m = logs_x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += logs_x[i];
        my += logs_y[i];
    }
    mx /= double(m);
    my /= double(m);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        num += (logs_x[i] - mx) * (logs_y[i] - my);
        den += (logs_x[i] - mx) * (logs_x[i] - mx);
    }
    fit.slope = num / den;
    return fit;
}

ConvolutionControlledReport convolution_as_controlled(const DelayedRoughDriver& drv,
                                                      const DelayedControlledVector& y,
                                                      const SemigroupSpec& sg, double alpha,
                                                      double a_tilde, double sigma) {
    if (!(sigma > 0.0 && sigma < a_tilde))
        throw std::invalid_argument("convolution_as_controlled: need sigma in (0, a_tilde)");
    ConvolutionControlledReport rep;
    rep.lambda0 = std::min(alpha - a_tilde, a_tilde - sigma);

    const auto series = convolution_series(drv, y, sg);
    DelayedControlledPath zeta;
    zeta.grid = y.grid();
    zeta.theta = y.theta() + sigma;
    zeta.d = y.d();
    zeta.driver = y.driver();
    zeta.y = series;
    zeta.y_prime.resize(static_cast<std::size_t>(zeta.grid.n));
    for (std::int64_t t = 0; t < zeta.grid.n; ++t) {
        auto& tup = zeta.y_prime[static_cast<std::size_t>(t)];
        tup.reserve(static_cast<std::size_t>(zeta.d));
        for (int i = 0; i < zeta.d; ++i)
            tup.push_back(y.comp[static_cast<std::size_t>(i)].y[static_cast<std::size_t>(t)]);
    }

    const double T = zeta.grid.t_end() - zeta.grid.t_start();
    const double rho = driver_metrics(drv, alpha).rho;
    const double y0 = [&] {
        double s = 0.0;
        for (const auto& c : y.comp) s += sobolev_norm(c.y.front(), y.theta());
        return s;
    }();

    rep.norm_lhs_ii = controlled_norm(zeta, a_tilde, zeta.theta).total;
    rep.bound_rhs_ii = (1.0 + rho) * controlled_norm_total(y, a_tilde, y.theta()) *
                           std::pow(T, rep.lambda0) +
                       y0;
    rep.ratio_ii = rep.bound_rhs_ii == 0.0 ? 0.0 : rep.norm_lhs_ii / rep.bound_rhs_ii;

    double yp0 = 0.0;
    for (const auto& c : y.comp) {
        if (!c.y_prime.empty())
            for (int i = 0; i < c.d; ++i)
                yp0 += sobolev_norm(c.yp(0, i), y.theta() - alpha);
        if (c.delayed())
            for (int i = 0; i < c.d; ++i)
                yp0 += sobolev_norm(c.ybp(0, i), y.theta() - alpha);
    }
    rep.norm_lhs_iii = controlled_norm(zeta, alpha, zeta.theta).total;
    rep.bound_rhs_iii = (1.0 + rho) * (controlled_norm_total(y, alpha, y.theta()) *
                                           std::pow(T, alpha - sigma) +
                                       yp0) +
                        y0;
    rep.ratio_iii = rep.bound_rhs_iii == 0.0 ? 0.0 : rep.norm_lhs_iii / rep.bound_rhs_iii;
    rep.zeta = std::move(zeta);
    return rep;
}

ConvolutionStabilityReport convolution_stability(const DelayedRoughDriver& dx,
                                                 const DelayedControlledVector& y,
                                                 const DelayedRoughDriver& dyr,
                                                 const DelayedControlledVector& z,
                                                 const SemigroupSpec& sg, double alpha,
                                                 double a_tilde, double sigma) {
    if (!(a_tilde > sigma && a_tilde < alpha && 3.0 * a_tilde - 2.0 * alpha - sigma > 0.0))
        throw std::invalid_argument(
            "convolution_stability: need a_tilde in (sigma, alpha) with 3 a_tilde - 2 alpha - "
            "sigma > 0");
    ConvolutionStabilityReport rep;
    rep.lambda = std::min({alpha - a_tilde, a_tilde * (alpha - sigma) / alpha,
                           3.0 * a_tilde - 2.0 * alpha - sigma});

    auto as_controlled = [&](const DelayedRoughDriver& drv, const DelayedControlledVector& v) {
        const auto series = convolution_series(drv, v, sg);
        DelayedControlledPath zeta;
        zeta.grid = v.grid();
        zeta.theta = v.theta() + sigma;
        zeta.d = v.d();
        zeta.driver = v.driver();
        zeta.y = series;
        zeta.y_prime.resize(static_cast<std::size_t>(zeta.grid.n));
        for (std::int64_t t = 0; t < zeta.grid.n; ++t) {
            auto& tup = zeta.y_prime[static_cast<std::size_t>(t)];
            for (int i = 0; i < zeta.d; ++i)
                tup.push_back(v.comp[static_cast<std::size_t>(i)].y[static_cast<std::size_t>(t)]);
        }
        return zeta;
    };

    const auto zeta = as_controlled(dx, y);
    const auto chi = as_controlled(dyr, z);
    const double T = zeta.grid.t_end() - zeta.grid.t_start();

    rep.lhs = controlled_distance(zeta, chi, a_tilde, alpha, y.theta() + sigma);
    rep.path_term =
        controlled_distance_total(y, z, a_tilde, alpha, y.theta()) * std::pow(T, rep.lambda);
    rep.driver_term = rough_distance(dx, dyr, alpha);
    for (int i = 0; i < y.d(); ++i)
        rep.initial_term += sobolev_norm(y.comp[static_cast<std::size_t>(i)].y.front() -
                                             z.comp[static_cast<std::size_t>(i)].y.front(),
                                         y.theta());
    return rep;
}

}  // namespace drough
