#include "drough/grid_fn.hpp"

#include <stdexcept>

namespace drough {

GridFn2 delta(const GridFn1& f) {
    GridFn2 g;
    g.grid = f.grid;
    g.eval = [vals = f.values](std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("GridFn2: reversed pair");
        return vals[static_cast<std::size_t>(hi)] - vals[static_cast<std::size_t>(lo)];
    };
    return g;
}

GridFn3 delta(const GridFn2& f) {
    GridFn3 g;
    g.grid = f.grid;
    auto eval2 = f.eval;
    g.eval = [eval2](std::int64_t lo, std::int64_t mid, std::int64_t hi) {
        if (!(lo <= mid && mid <= hi)) throw std::invalid_argument("GridFn3: unordered triple");
        return eval2(lo, hi) - eval2(mid, hi) - eval2(lo, mid);
    };
    return g;
}

std::vector<double> span_pow_table(const Grid& g, double a) {
    std::vector<double> pw(static_cast<std::size_t>(g.n));
    for (std::int64_t s = 1; s < g.n; ++s)
        pw[static_cast<std::size_t>(s)] = std::pow(double(s) * g.dt, a);
    if (!pw.empty()) pw[0] = 1.0;  // unused
    return pw;
}

double holder_norm2(const GridFn2& f, double alpha, double theta) {
    if (alpha <= 0.0) throw std::invalid_argument("holder_norm2: alpha must be positive");
    if (f.grid.n < 2) throw std::invalid_argument("holder_norm2: degenerate grid");
    SobolevWeights w(64, theta);  // grown on demand below
    int cap = 64;
    auto norm_ij = [&](std::int64_t i, std::int64_t j) {
        SpectralVector v = f.eval(i, j);
        if (v.max_mode() > cap) {
            cap = v.max_mode();
            w = SobolevWeights(cap, theta);
        }
        return w.norm(v);
    };
    return holder_sup_pairs(f.grid, alpha, norm_ij);
}

double holder_norm3(const GridFn3& f, double alpha1, double alpha2, double theta) {
    if (alpha1 <= 0.0 || alpha2 <= 0.0)
        throw std::invalid_argument("holder_norm3: exponents must be positive");
    if (f.grid.n < 3) throw std::invalid_argument("holder_norm3: need at least 3 nodes");
    SobolevWeights w(64, theta);
    int cap = 64;
    auto norm_ijk = [&](std::int64_t i, std::int64_t j, std::int64_t k) {
        SpectralVector v = f.eval(i, j, k);
        if (v.max_mode() > cap) {
            cap = v.max_mode();
            w = SobolevWeights(cap, theta);
        }
        return w.norm(v);
    };
    return holder_sup_triples(f.grid, alpha1, alpha2, norm_ijk);
}

}  // namespace drough
