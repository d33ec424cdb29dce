#include "drough/rough_driver.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "drough/grid_fn.hpp"

namespace drough {

const char* flavor_name(DriverFlavor f) {
    switch (f) {
        case DriverFlavor::fbm_symmetric: return "fbm_symmetric";
        case DriverFlavor::bm_stratonovich: return "bm_stratonovich";
        case DriverFlavor::bm_ito: return "bm_ito";
        case DriverFlavor::deterministic: return "deterministic";
    }
    return "unknown";
}

DriverFlavor flavor_from_name(const std::string& s) {
    if (s == "fbm_symmetric") return DriverFlavor::fbm_symmetric;
    if (s == "bm_stratonovich") return DriverFlavor::bm_stratonovich;
    if (s == "bm_ito") return DriverFlavor::bm_ito;
    if (s == "deterministic") return DriverFlavor::deterministic;
    throw std::invalid_argument("unknown driver flavor: " + s);
}

double AreaMatrix::frobenius() const {
    double s = 0.0;
    for (double v : m) s += v * v;
    return std::sqrt(s);
}

AreaMatrix& AreaMatrix::operator-=(const AreaMatrix& o) {
    for (std::size_t i = 0; i < m.size(); ++i) m[i] -= o.m[i];
    return *this;
}

AreaMatrix& AreaMatrix::operator+=(const AreaMatrix& o) {
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += o.m[i];
    return *this;
}

std::vector<double> DelayedRoughDriver::increment(std::int64_t lo, std::int64_t hi) const {
    std::vector<double> v(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) v[static_cast<std::size_t>(c)] = increment(lo, hi, c);
    return v;
}

double DelayedRoughDriver::max_abs_path() const {
    double s = 0.0;
    for (std::int64_t node = 0; node < grid.n; ++node) {
        double q = 0.0;
        for (int c = 0; c < d; ++c) q += x(node, c) * x(node, c);
        s = std::max(s, q);
    }
    return std::sqrt(s);
}

void DelayedRoughDriver::finalize() {
    const std::int64_t n = grid.n;
    const std::size_t dd = static_cast<std::size_t>(d) * d;
    prefix_.assign(static_cast<std::size_t>(n) * dd, 0.0);
    // A_{k+1,0} = A_{k,0} + C_k + dX_{k,0} (x) dX_{k+1,k}
    for (std::int64_t k = 0; k + 1 < n; ++k) {
        const double* cellk = cell(k);
        double* prev = prefix_.data() + static_cast<std::size_t>(k) * dd;
        double* next = prefix_.data() + static_cast<std::size_t>(k + 1) * dd;
        for (int i = 0; i < d; ++i) {
            const double dxi = x(k, i) - x(0, i);
            for (int j = 0; j < d; ++j) {
                next[static_cast<std::size_t>(i) * d + j] =
                    prev[static_cast<std::size_t>(i) * d + j] +
                    cellk[static_cast<std::size_t>(i) * d + j] +
                    dxi * (x(k + 1, j) - x(k, j));
            }
        }
    }
    const std::int64_t z = node_zero();
    const std::int64_t ncd = delayed_cells();
    prefix_delayed_.assign(static_cast<std::size_t>(ncd + 1) * dd, 0.0);
    // base node z (t = 0); inner increments read the path shifted by the delay
    for (std::int64_t k = 0; k < ncd; ++k) {
        const double* cellk = delayed_cell(k);
        double* prev = prefix_delayed_.data() + static_cast<std::size_t>(k) * dd;
        double* next = prefix_delayed_.data() + static_cast<std::size_t>(k + 1) * dd;
        const std::int64_t node = z + k;
        for (int i = 0; i < d; ++i) {
            const double dxi = x(node - grid.delay_steps, i) - x(0, i);  // dX^i_{t_node - r, -r}
            for (int j = 0; j < d; ++j) {
                next[static_cast<std::size_t>(i) * d + j] =
                    prev[static_cast<std::size_t>(i) * d + j] +
                    cellk[static_cast<std::size_t>(i) * d + j] +
                    dxi * (x(node + 1, j) - x(node, j));
            }
        }
    }
}

AreaMatrix DelayedRoughDriver::area(std::int64_t lo, std::int64_t hi) const {
    if (lo > hi) throw std::invalid_argument("area: reversed pair");
    AreaMatrix out(d);
    if (lo == hi) return out;
    if (hi == lo + 1) {
        std::memcpy(out.m.data(), cell(lo), out.m.size() * sizeof(double));
        return out;
    }
    const std::size_t dd = static_cast<std::size_t>(d) * d;
    const double* plo = prefix_.data() + static_cast<std::size_t>(lo) * dd;
    const double* phi = prefix_.data() + static_cast<std::size_t>(hi) * dd;
    // A_{hi,lo} = A_{hi,0} - A_{lo,0} - dX_{lo,0} (x) dX_{hi,lo}
    for (int i = 0; i < d; ++i) {
        const double dxi = x(lo, i) - x(0, i);
        for (int j = 0; j < d; ++j)
            out.at(i, j) = phi[static_cast<std::size_t>(i) * d + j] -
                           plo[static_cast<std::size_t>(i) * d + j] -
                           dxi * (x(hi, j) - x(lo, j));
    }
    return out;
}

AreaMatrix DelayedRoughDriver::delayed_area(std::int64_t lo, std::int64_t hi) const {
    const std::int64_t z = node_zero();
    if (lo > hi) throw std::invalid_argument("delayed_area: reversed pair");
    if (lo < z) throw std::invalid_argument("delayed_area: pair must lie in [0, T]");
    AreaMatrix out(d);
    if (lo == hi) return out;
    if (hi == lo + 1) {
        std::memcpy(out.m.data(), delayed_cell(lo - z), out.m.size() * sizeof(double));
        return out;
    }
    const std::size_t dd = static_cast<std::size_t>(d) * d;
    const double* plo = prefix_delayed_.data() + static_cast<std::size_t>(lo - z) * dd;
    const double* phi = prefix_delayed_.data() + static_cast<std::size_t>(hi - z) * dd;
    const std::int64_t m = grid.delay_steps;
    for (int i = 0; i < d; ++i) {
        const double dxi = x(lo - m, i) - x(0, i);  // dX^i_{t_lo - r, -r}
        for (int j = 0; j < d; ++j)
            out.at(i, j) = phi[static_cast<std::size_t>(i) * d + j] -
                           plo[static_cast<std::size_t>(i) * d + j] -
                           dxi * (x(hi, j) - x(lo, j));
    }
    return out;
}

AreaMatrix reconstruct_area(const DelayedRoughDriver& drv, std::int64_t lo, std::int64_t hi,
                            bool delayed) {
    if (lo > hi) throw std::invalid_argument("reconstruct_area: s > t");
    const int d = drv.d;
    AreaMatrix acc(d);
    if (lo == hi) return acc;
    const std::int64_t z = drv.node_zero();
    if (delayed && lo < z)
        throw std::invalid_argument("reconstruct_area: delayed pair must lie in [0, T]");
    const std::int64_t m = drv.grid.delay_steps;
    for (std::int64_t c = lo; c < hi; ++c) {
        const double* cellc = delayed ? drv.delayed_cell(c - z) : drv.cell(c);
        const std::int64_t inner_base = delayed ? lo - m : lo;
        const std::int64_t inner_node = delayed ? c - m : c;
        for (int i = 0; i < d; ++i) {
            const double dxi = drv.x(inner_node, i) - drv.x(inner_base, i);
            for (int j = 0; j < d; ++j)
                acc.at(i, j) += cellc[static_cast<std::size_t>(i) * d + j] +
                                dxi * (drv.x(c + 1, j) - drv.x(c, j));
        }
    }
    return acc;
}

std::pair<double, double> chen_residual(const DelayedRoughDriver& drv) {
    const int d = drv.d;
    const std::int64_t n = drv.grid.n;
    double worst = 0.0;
    // level 1
    for (std::int64_t s = 0; s + 2 < n; ++s) {
        for (std::int64_t u = s + 1; u + 1 < n; ++u) {
            const AreaMatrix aus = drv.area(s, u);
            for (std::int64_t t = u + 1; t < n; ++t) {
                AreaMatrix res = drv.area(s, t);
                res -= aus;
                const AreaMatrix atu = drv.area(u, t);
                double acc = 0.0;
                for (int i = 0; i < d; ++i) {
                    const double dxi = drv.x(u, i) - drv.x(s, i);
                    for (int j = 0; j < d; ++j) {
                        const double v =
                            res.at(i, j) - atu.at(i, j) - dxi * (drv.x(t, j) - drv.x(u, j));
                        acc += v * v;
                    }
                }
                worst = std::max(worst, acc);
            }
        }
    }
    // level 2 (delayed), pairs within [0, T]
    const std::int64_t z = drv.node_zero();
    const std::int64_t m = drv.grid.delay_steps;
    double worst_d = 0.0;
    for (std::int64_t s = z; s + 2 < n; ++s) {
        for (std::int64_t u = s + 1; u + 1 < n; ++u) {
            const AreaMatrix aus = drv.delayed_area(s, u);
            for (std::int64_t t = u + 1; t < n; ++t) {
                AreaMatrix res = drv.delayed_area(s, t);
                res -= aus;
                const AreaMatrix atu = drv.delayed_area(u, t);
                double acc = 0.0;
                for (int i = 0; i < d; ++i) {
                    const double dxi = drv.x(u - m, i) - drv.x(s - m, i);
                    for (int j = 0; j < d; ++j) {
                        const double v =
                            res.at(i, j) - atu.at(i, j) - dxi * (drv.x(t, j) - drv.x(u, j));
                        acc += v * v;
                    }
                }
                worst_d = std::max(worst_d, acc);
            }
        }
    }
    return {std::sqrt(worst), std::sqrt(worst_d)};
}

DriverMetricReport driver_metrics(const DelayedRoughDriver& drv, double alpha) {
    DriverMetricReport rep;
    rep.alpha = alpha;
    const Grid& g = drv.grid;
    if (g.n < 2) throw std::invalid_argument("driver_metrics: degenerate grid");
    rep.path_holder = holder_sup_pairs(g, alpha, [&](std::int64_t i, std::int64_t j) {
        double s = 0.0;
        for (int c = 0; c < drv.d; ++c) {
            const double v = drv.increment(i, j, c);
            s += v * v;
        }
        return std::sqrt(s);
    });
    rep.area_holder = holder_sup_pairs(
        g, 2.0 * alpha, [&](std::int64_t i, std::int64_t j) { return drv.area(i, j).frobenius(); });
    const std::int64_t z = drv.node_zero();
    if (g.n - z >= 2) {
        const Grid sol = g.subgrid(z, g.n - z);
        rep.delayed_area_holder =
            holder_sup_pairs(sol, 2.0 * alpha, [&](std::int64_t i, std::int64_t j) {
                return drv.delayed_area(z + i, z + j).frobenius();
            });
    }
    rep.rho = rep.path_holder + rep.area_holder + rep.delayed_area_holder;
    return rep;
}

double rough_distance(const DelayedRoughDriver& a, const DelayedRoughDriver& b, double alpha) {
    if (!(a.grid == b.grid) || a.d != b.d)
        throw std::invalid_argument("rough_distance: drivers on different grids");
    const Grid& g = a.grid;
    double path_term = holder_sup_pairs(g, alpha, [&](std::int64_t i, std::int64_t j) {
        double s = 0.0;
        for (int c = 0; c < a.d; ++c) {
            const double v = a.increment(i, j, c) - b.increment(i, j, c);
            s += v * v;
        }
        return std::sqrt(s);
    });
    double area_term = holder_sup_pairs(g, 2.0 * alpha, [&](std::int64_t i, std::int64_t j) {
        AreaMatrix ma = a.area(i, j);
        ma -= b.area(i, j);
        return ma.frobenius();
    });
    const std::int64_t z = a.node_zero();
    double delayed_term = 0.0;
    if (g.n - z >= 2) {
        const Grid sol = g.subgrid(z, g.n - z);
        delayed_term = holder_sup_pairs(sol, 2.0 * alpha, [&](std::int64_t i, std::int64_t j) {
            AreaMatrix ma = a.delayed_area(z + i, z + j);
            ma -= b.delayed_area(z + i, z + j);
            return ma.frobenius();
        });
    }
    return path_term + area_term + delayed_term;
}

double area_gap(const DelayedRoughDriver& drv, double alpha_bar) {
    if (drv.grid.delay_steps == 0) return 0.0;
    const std::int64_t first = 2 * drv.grid.delay_steps;  // local index of t = r
    const std::int64_t n = drv.grid.n;
    if (n - first < 2) return 0.0;
    const Grid window = drv.grid.subgrid(first, n - first);
    return holder_sup_pairs(window, 2.0 * alpha_bar, [&](std::int64_t i, std::int64_t j) {
        AreaMatrix ma = drv.area(first + i, first + j);
        ma -= drv.delayed_area(first + i, first + j);
        return ma.frobenius();
    });
}

double delayed_area_gap_norm(const DelayedRoughDriver& drv, double a_tilde) {
    if (drv.grid.delay_steps == 0) return 0.0;
    const std::int64_t z = drv.node_zero();
    if (drv.grid.n - z < 2) return 0.0;
    const Grid sol = drv.grid.subgrid(z, drv.grid.n - z);
    return holder_sup_pairs(sol, 2.0 * a_tilde, [&](std::int64_t i, std::int64_t j) {
        AreaMatrix ma = drv.area(z + i, z + j);
        ma -= drv.delayed_area(z + i, z + j);
        return ma.frobenius();
    });
}

DelayedRoughDriver enhance_from_fine_path(const std::vector<double>& fine, const Grid& grid,
                                          int d, std::int64_t subgrid_factor,
                                          DriverFlavor flavor, std::uint64_t seed, double hurst) {
    if (subgrid_factor < 1) throw std::invalid_argument("enhance: subgrid_factor must be >= 1");
    const std::int64_t nf = (grid.n - 1) * subgrid_factor + 1;
    if (fine.size() != static_cast<std::size_t>(nf) * d)
        throw std::invalid_argument("enhance: fine path size mismatch");
    DelayedRoughDriver drv;
    drv.grid = grid;
    drv.d = d;
    drv.flavor = flavor;
    drv.seed = seed;
    drv.subgrid_factor = subgrid_factor;
    drv.hurst = hurst;

    auto xf = [&](std::int64_t fnode, int c) {
        return fine[static_cast<std::size_t>(fnode) * d + c];
    };

    drv.path.resize(static_cast<std::size_t>(grid.n) * d);
    for (std::int64_t k = 0; k < grid.n; ++k)
        for (int c = 0; c < d; ++c)
            drv.path[static_cast<std::size_t>(k) * d + c] = xf(k * subgrid_factor, c);

    const std::size_t dd = static_cast<std::size_t>(d) * d;
    drv.cell_area.assign(static_cast<std::size_t>(grid.cells()) * dd, 0.0);
    // symmetric sum per cell: sum_m (dX^i_{m,base} + dX^i_{m+1,base})/2 * dX^j_{m+1,m}
    for (std::int64_t k = 0; k < grid.cells(); ++k) {
        double* cell = drv.cell_area.data() + static_cast<std::size_t>(k) * dd;
        const std::int64_t f0 = k * subgrid_factor;
        for (int i = 0; i < d; ++i) {
            const double base = xf(f0, i);
            for (int j = 0; j < d; ++j) {
                double acc = 0.0;
                for (std::int64_t m = 0; m < subgrid_factor; ++m) {
                    const double inner =
                        0.5 * ((xf(f0 + m, i) - base) + (xf(f0 + m + 1, i) - base));
                    acc += inner * (xf(f0 + m + 1, j) - xf(f0 + m, j));
                }
                cell[static_cast<std::size_t>(i) * d + j] = acc;
            }
        }
    }

    const std::int64_t z = grid.delay_steps;  // also the local index of t = 0
    const std::int64_t ncd = grid.cells() - z;
    if (z == 0) {
        drv.cell_delayed_area = drv.cell_area;  // r = 0: levels coincide bitwise
    } else {
        drv.cell_delayed_area.assign(static_cast<std::size_t>(ncd) * dd, 0.0);
        const std::int64_t shift = z * subgrid_factor;  // delay in fine steps
        for (std::int64_t k = 0; k < ncd; ++k) {
            double* cell = drv.cell_delayed_area.data() + static_cast<std::size_t>(k) * dd;
            const std::int64_t f0 = (z + k) * subgrid_factor;
            for (int i = 0; i < d; ++i) {
                const double base = xf(f0 - shift, i);
                for (int j = 0; j < d; ++j) {
                    double acc = 0.0;
                    for (std::int64_t m = 0; m < subgrid_factor; ++m) {
                        const double inner = 0.5 * ((xf(f0 + m - shift, i) - base) +
                                                    (xf(f0 + m + 1 - shift, i) - base));
                        acc += inner * (xf(f0 + m + 1, j) - xf(f0 + m, j));
                    }
                    cell[static_cast<std::size_t>(i) * d + j] = acc;
                }
            }
        }
    }
    drv.finalize();
    return drv;
}

DelayedRoughDriver enhance_deterministic(
    const std::function<std::vector<double>(double)>& path_values, const Grid& grid, int d,
    std::int64_t subgrid_factor) {
    const std::int64_t nf = (grid.n - 1) * subgrid_factor + 1;
    const double dtf = grid.dt / double(subgrid_factor);
    std::vector<double> fine(static_cast<std::size_t>(nf) * d);
    for (std::int64_t f = 0; f < nf; ++f) {
        const double t = grid.t_start() + double(f) * dtf;
        const std::vector<double> v = path_values(t);
        if (v.size() != static_cast<std::size_t>(d))
            throw std::invalid_argument("enhance_deterministic: callable returned wrong dimension");
        for (int c = 0; c < d; ++c) fine[static_cast<std::size_t>(f) * d + c] = v[c];
    }
    return enhance_from_fine_path(fine, grid, d, subgrid_factor, DriverFlavor::deterministic, 0,
                                  0.0);
}

DelayedRoughDriver enhance_brownian_ito(const DelayedRoughDriver& drv) {
    if (drv.flavor != DriverFlavor::bm_stratonovich)
        throw std::invalid_argument("enhance_brownian_ito: flavor must be bm_stratonovich");
    DelayedRoughDriver out = drv;
    out.flavor = DriverFlavor::bm_ito;
    const std::size_t dd = static_cast<std::size_t>(out.d) * out.d;
    const double half_dt = 0.5 * out.grid.dt;
    for (std::int64_t k = 0; k < out.grid.cells(); ++k) {
        double* cell = out.cell_area.data() + static_cast<std::size_t>(k) * dd;
        for (int i = 0; i < out.d; ++i) cell[static_cast<std::size_t>(i) * out.d + i] -= half_dt;
    }
    // the delayed level carries no correction
    out.finalize();
    return out;
}

}  // namespace drough
