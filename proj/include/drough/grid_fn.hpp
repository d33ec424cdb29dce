#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "drough/grid.hpp"
#include "drough/spectral.hpp"

namespace drough {

/*
 * Grid functions of one, two and three time indices with values in the scale.
 * Two-index functions live on ordered pairs of local node indices (lo < hi),
 * three-index on ordered triples; asking for a reversed pair is an error, not
 * a sign convention. The increment operator acts as
 *
 *   (delta f)_{t,s}   = f_t - f_s
 *   (delta g)_{t,u,s} = g_{t,s} - g_{t,u} - g_{u,s},   s <= u <= t,
 *
 * and the discrete Hölder norms are suprema over grid tuples, documented as
 * lower bounds of the continuum norms.
 */

struct GridFn1 {
    Grid grid;
    std::vector<SpectralVector> values;  // one per node
};

struct GridFn2 {
    Grid grid;
    // eval(lo, hi) = f_{t_hi, t_lo}, requires 0 <= lo <= hi < n
    std::function<SpectralVector(std::int64_t, std::int64_t)> eval;
};

struct GridFn3 {
    Grid grid;
    // eval(lo, mid, hi) = f_{t_hi, t_mid, t_lo}, requires lo <= mid <= hi
    std::function<SpectralVector(std::int64_t, std::int64_t, std::int64_t)> eval;
};

GridFn2 delta(const GridFn1& f);
GridFn3 delta(const GridFn2& f);

// sup_{s<t} ||f_{t,s}||_theta / (t-s)^alpha. Error if the grid has < 2 nodes.
double holder_norm2(const GridFn2& f, double alpha, double theta);

// sup_{s<u<t} ||f_{t,u,s}||_theta / ((t-u)^{alpha1} (u-s)^{alpha2}). Error if < 3 nodes.
double holder_norm3(const GridFn3& f, double alpha1, double alpha2, double theta);

// Powers of span times, pow_table(g, a)[j-i] = ((j-i)*dt)^a; span 0 slot unused.
std::vector<double> span_pow_table(const Grid& g, double a);

// Generic Hölder kernels over index tuples; norm_fn already returns a norm.
template <class NormFn>
double holder_sup_pairs(const Grid& g, double alpha, NormFn&& norm_fn) {
    const auto pw = span_pow_table(g, alpha);
    double best = 0.0;
    for (std::int64_t i = 0; i + 1 < g.n; ++i)
        for (std::int64_t j = i + 1; j < g.n; ++j) {
            const double v = norm_fn(i, j) / pw[static_cast<std::size_t>(j - i)];
            if (v > best) best = v;
        }
    return best;
}

template <class NormFn>
double holder_sup_triples(const Grid& g, double alpha1, double alpha2, NormFn&& norm_fn) {
    const auto pw1 = span_pow_table(g, alpha1);
    const auto pw2 = span_pow_table(g, alpha2);
    double best = 0.0;
    for (std::int64_t i = 0; i + 2 < g.n; ++i)
        for (std::int64_t j = i + 1; j + 1 < g.n; ++j) {
            const double d2 = pw2[static_cast<std::size_t>(j - i)];
            for (std::int64_t k = j + 1; k < g.n; ++k) {
                const double v =
                    norm_fn(i, j, k) / (pw1[static_cast<std::size_t>(k - j)] * d2);
                if (v > best) best = v;
            }
        }
    return best;
}

}  // namespace drough
