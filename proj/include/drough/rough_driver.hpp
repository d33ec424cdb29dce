#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "drough/grid.hpp"

namespace drough {

/*
 * Delayed rough driver: path X on the grid covering I_r = [-r, T] together
 * with second-level increments per consecutive grid cell,
 *
 *   cell_area[c]^{i,j}         ~ int_{t_c}^{t_{c+1}} (X^i_u - X^i_{t_c}) dX^j_u
 *   cell_delayed_area[c]^{i,j} ~ int_{t_c}^{t_{c+1}} (X^i_{u-r} - X^i_{t_c-r}) dX^j_u
 *
 * built by symmetric (midpoint) sums on a refinement subgrid. Index
 * convention: the FIRST superscript is the inner (possibly delayed)
 * increment, the second the outer differential. With this convention both
 * Chen relations hold identically for the discrete sums:
 *
 *   delta A_{t,u,s}    = dX^i_{u,s}     (x) dX^j_{t,u}
 *   delta A(-r)_{t,u,s} = dX^i_{u-r,s-r} (x) dX^j_{t,u}
 *
 * Arbitrary-pair values are reconstructed from the cell data via Chen;
 * storage is O(n d^2) instead of O(n^2 d^2). finalize() freezes prefix
 * tables; chen_residual checks cell data against the frozen prefixes, so a
 * cell mutated after finalize() is detected.
 */

enum class DriverFlavor : std::uint64_t {
    fbm_symmetric = 0,
    bm_stratonovich = 1,
    bm_ito = 2,  // symmetric area minus (t-s)/2 * delta_ij per cell; delayed level untouched
    deterministic = 3,
};

const char* flavor_name(DriverFlavor f);
DriverFlavor flavor_from_name(const std::string& s);

// Small dense d x d matrix, row = inner slot i, col = outer slot j.
struct AreaMatrix {
    int d = 0;
    std::vector<double> m;
    AreaMatrix() = default;
    explicit AreaMatrix(int dim) : d(dim), m(static_cast<std::size_t>(dim) * dim, 0.0) {}
    double& at(int i, int j) { return m[static_cast<std::size_t>(i) * d + j]; }
    double at(int i, int j) const { return m[static_cast<std::size_t>(i) * d + j]; }
    double frobenius() const;
    AreaMatrix& operator-=(const AreaMatrix& o);
    AreaMatrix& operator+=(const AreaMatrix& o);
};

class DelayedRoughDriver {
public:
    Grid grid;  // i0 = -delay_steps
    int d = 1;
    DriverFlavor flavor = DriverFlavor::deterministic;
    std::uint64_t seed = 0;
    std::int64_t subgrid_factor = 1;
    double hurst = 0.5;

    std::vector<double> path;               // n * d, node-major
    std::vector<double> cell_area;          // (n-1) * d * d
    std::vector<double> cell_delayed_area;  // (n-1-delay_steps) * d * d, cells starting at t >= 0

    // Rebuild the frozen prefix tables from the cell data. Must be called
    // after construction or after mutating cells on purpose.
    void finalize();
    bool finalized() const { return !prefix_.empty() || grid.n < 2; }

    double x(std::int64_t node, int comp) const {
        return path[static_cast<std::size_t>(node) * d + comp];
    }
    // X_hi - X_lo, local node indices
    std::vector<double> increment(std::int64_t lo, std::int64_t hi) const;
    double increment(std::int64_t lo, std::int64_t hi, int comp) const {
        return x(hi, comp) - x(lo, comp);
    }

    std::int64_t node_zero() const { return grid.delay_steps; }  // local index of t = 0
    std::int64_t delayed_cells() const { return grid.cells() - grid.delay_steps; }

    double max_abs_path() const;

    // Pair values via the frozen prefixes (adjacent pairs read the raw cell).
    AreaMatrix area(std::int64_t lo, std::int64_t hi) const;
    AreaMatrix delayed_area(std::int64_t lo, std::int64_t hi) const;  // needs t_lo >= 0

    const double* cell(std::int64_t c) const {
        return cell_area.data() + static_cast<std::size_t>(c) * d * d;
    }
    const double* delayed_cell(std::int64_t c) const {  // c relative to node_zero()
        return cell_delayed_area.data() + static_cast<std::size_t>(c) * d * d;
    }

private:
    std::vector<double> prefix_;          // A_{k,0}, k = 0..n-1, d*d each
    std::vector<double> prefix_delayed_;  // A(-r)_{k,z}, k = z..n-1 with z = node_zero()
};

// Literal Chen composition: sum of cell matrices plus cross terms, folded
// left to right over [lo, hi]. Split-point invariant to fp rounding.
AreaMatrix reconstruct_area(const DelayedRoughDriver& drv, std::int64_t lo, std::int64_t hi,
                            bool delayed);

// (max over grid triples of ||delta A - dX (x) dX||_F, same for the delayed
// level with the shifted first slot). Raw maxima; the contract is
// <= 1e-12 * (1 + ||X||_inf^2) for every driver built by this module.
std::pair<double, double> chen_residual(const DelayedRoughDriver& drv);

struct DriverMetricReport {
    double alpha = 0.0;
    double path_holder = 0.0;          // ||dX||_alpha
    double area_holder = 0.0;          // ||A||_{2 alpha}
    double delayed_area_holder = 0.0;  // ||A(-r)||_{2 alpha}
    double rho = 0.0;                  // sum of the three
};

DriverMetricReport driver_metrics(const DelayedRoughDriver& drv, double alpha);

// rho_alpha(a, b) = ||d(X-Y)||_alpha + ||A-B||_{2a} + ||A(-r)-B(-r)||_{2a}; grids must match.
double rough_distance(const DelayedRoughDriver& a, const DelayedRoughDriver& b, double alpha);

// sup over pairs r <= s < t <= T of ||A_{t,s} - A(-r)_{t,s}||_F / (t-s)^{2 alpha_bar};
// 0 when r = 0.
double area_gap(const DelayedRoughDriver& drv, double alpha_bar);

// The plain C_2 norm ||A - A(-r)||_{2 a_tilde} over the fixed interval [0, T]
// (the quantity whose r -> 0 limit vanishes for Brownian drivers). Unlike
// area_gap, the pair domain does not move with r, so medians across an
// r-grid are directly comparable.
double delayed_area_gap_norm(const DelayedRoughDriver& drv, double a_tilde);

/*
 * Enhancement: the driver is derived from a path sampled (or evaluated) on
 * the refinement subgrid with step dt / subgrid_factor. Areas are symmetric
 * midpoint sums over the fine cells, the discrete stand-in for the
 * symmetric-limit integrals; for smooth paths they converge at second order
 * in the subgrid factor.
 */

// fine: node-major values on the fine lattice covering the grid,
// fine node count = (grid.n - 1) * subgrid_factor + 1.
DelayedRoughDriver enhance_from_fine_path(const std::vector<double>& fine, const Grid& grid,
                                          int d, std::int64_t subgrid_factor,
                                          DriverFlavor flavor, std::uint64_t seed, double hurst);

// Deterministic path given as a callable time -> R^d, evaluated on the subgrid.
DelayedRoughDriver enhance_deterministic(
    const std::function<std::vector<double>(double)>& path_values, const Grid& grid, int d,
    std::int64_t subgrid_factor);

// Copy with cell A^{i,j} -> A^{i,j} - (t-s)/2 delta_ij per cell; the delayed
// level is left untouched. Requires flavor bm_stratonovich.
DelayedRoughDriver enhance_brownian_ito(const DelayedRoughDriver& drv);

}  // namespace drough
