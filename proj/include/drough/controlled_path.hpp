#pragma once

#include <memory>
#include <vector>

#include "drough/grid.hpp"
#include "drough/grid_fn.hpp"
#include "drough/rough_driver.hpp"
#include "drough/spectral.hpp"

namespace drough {

/*
 * Delayed controlled path (y, y', ybar') on a subinterval of the driver's
 * grid, with regularity tag theta. The remainder
 *
 *   Rbar_{t,s} = dy_{t,s} - sum_i y'^{,i}_s dX^i_{t,s} - sum_i ybar'^{,i}_s dX^i_{t-r,s-r}
 *
 * needs X on I_r; the driver grid provides it. A plain (non-delayed)
 * controlled path is the ybar' == absent special case and then no history
 * nodes are touched. Gubinelli derivatives are stored, never inferred.
 *
 * All norms follow the scale conventions: component tuples are summed
 * (||y'|| = sum_i ||y'^{,i}||), the y' terms are the sup at theta-a and the
 * Hölder seminorm of dy' at theta-2a.
 */
struct DelayedControlledPath {
    Grid grid;
    double theta = 0.0;
    int d = 1;
    std::shared_ptr<const DelayedRoughDriver> driver;
    std::vector<SpectralVector> y;                     // per node
    std::vector<std::vector<SpectralVector>> y_prime;  // per node, d entries; empty = zero
    std::vector<std::vector<SpectralVector>> ybar_prime;  // empty = non-delayed

    bool delayed() const { return !ybar_prime.empty(); }
    std::int64_t n() const { return grid.n; }

    const SpectralVector& yp(std::int64_t node, int i) const {
        return y_prime[static_cast<std::size_t>(node)][static_cast<std::size_t>(i)];
    }
    const SpectralVector& ybp(std::int64_t node, int i) const {
        return ybar_prime[static_cast<std::size_t>(node)][static_cast<std::size_t>(i)];
    }

    // driver-local node index of this path's local node (optionally delayed by r)
    std::int64_t driver_node(std::int64_t node, bool shift_delay = false) const;

    // Rbar_{t_hi, t_lo} (R for non-delayed paths)
    SpectralVector remainder_at(std::int64_t lo, std::int64_t hi) const;

    static DelayedControlledPath zero(const Grid& g, double theta, int d,
                                      std::shared_ptr<const DelayedRoughDriver> drv,
                                      int max_mode, bool with_delay_slot);
};

// remainder as a two-index grid function
GridFn2 remainder(const DelayedControlledPath& p);

struct ControlledNormReport {
    double sup_y = 0.0;            // ||y||_{inf, theta}
    double sup_yprime = 0.0;       // ||y'||_{inf, theta-a}
    double holder_yprime = 0.0;    // ||dy'||_{a, theta-2a}
    double sup_ybarprime = 0.0;    // ||ybar'||_{inf, theta-a}
    double holder_ybarprime = 0.0; // ||d ybar'||_{a, theta-2a}
    double holder_R_alpha = 0.0;   // ||Rbar||_{a, theta-a}
    double holder_R_2alpha = 0.0;  // ||Rbar||_{2a, theta-2a}
    double total = 0.0;            // sum of the seven
};

// ||y, y', ybar'||_{X, 2a, theta}; the exponent a also fixes the spatial offsets.
ControlledNormReport controlled_norm(const DelayedControlledPath& p, double a, double theta);

// rho_{2 a_tilde, 2 alpha, theta}(p, q): Hölder exponents from a_tilde, spatial
// offsets from alpha. p and q may be based on different drivers (remainders are
// taken against each path's own driver); grids must coincide.
double controlled_distance(const DelayedControlledPath& p, const DelayedControlledPath& q,
                           double a_tilde, double alpha, double theta);

// d-component integrand for the rough convolution: component i is itself a
// delayed controlled path whose derivative tuple is indexed by the driver
// direction j.
struct DelayedControlledVector {
    std::vector<DelayedControlledPath> comp;

    int d() const { return static_cast<int>(comp.size()); }
    const Grid& grid() const { return comp.front().grid; }
    double theta() const { return comp.front().theta; }
    const std::shared_ptr<const DelayedRoughDriver>& driver() const {
        return comp.front().driver;
    }
};

double controlled_norm_total(const DelayedControlledVector& v, double a, double theta);
double controlled_distance_total(const DelayedControlledVector& p,
                                 const DelayedControlledVector& q, double a_tilde, double alpha,
                                 double theta);

// Initial-value constructions on [-r, 0] (both satisfy the controlled-path
// requirements exactly; the driver-linear one has identically zero remainder).
DelayedControlledPath make_history_constant(const SpectralVector& value, const Grid& hist_grid,
                                            std::shared_ptr<const DelayedRoughDriver> drv,
                                            double theta);
DelayedControlledPath make_history_driver_linear(const SpectralVector& phi0,
                                                 const std::vector<SpectralVector>& c,
                                                 const Grid& hist_grid,
                                                 std::shared_ptr<const DelayedRoughDriver> drv,
                                                 double theta);

}  // namespace drough
