#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "drough/controlled_path.hpp"
#include "drough/semigroup.hpp"

namespace drough {

/*
 * Semigroup-twisted sewing: for a two-index germ f on the grid,
 *
 *   K_t(f) = lim over partitions P of [t_0, t] of  sum_{[u,v] in P} S_{t-u} f_{v,u},
 *
 * realized by dyadic bisection of the node range (cells split at the floor
 * midpoint node; one-step cells stop splitting, so deep enough refinement
 * reaches the full grid sum). The Cauchy increment between the last two
 * levels is reported; convergence is declared when it drops below
 * 1e-9 * (1 + ||result||), and two consecutive non-decreasing increments
 * above that tolerance raise a convergence-failure error (rough-driver
 * increments fluctuate level to level, a single bump is normal).
 */

struct Germ {
    // eval(lo, hi) = f_{t_hi, t_lo} in local indices of the grid passed to sew
    std::function<SpectralVector(std::int64_t, std::int64_t)> eval;
    double alpha = 0.4;  // declared decomposition exponent of J^alpha_theta
    double theta = 0.0;
};

struct SewResult {
    SpectralVector value;
    double last_increment = 0.0;
    int levels_used = 0;
    bool converged = false;
};

// Integrates from the grid's first node to t_node.
SewResult sew(const Germ& germ, const SemigroupSpec& sg, const Grid& grid, std::int64_t t_node,
              int refine_levels = 6);

// Shared germ-value cache, keyed by the node pair. sew and the convolution
// reuse values across levels and across adjacent t's through it.
using GermCache = std::unordered_map<std::uint64_t, SpectralVector>;

SewResult sew(const Germ& germ, const SemigroupSpec& sg, const Grid& grid, std::int64_t t_node,
              int refine_levels, GermCache* cache);

// Compensated germ of the delayed rough convolution,
//   f_{v,u} = sum_i y^i_u dX^i_{v,u}
//           + sum_{i,j} [ y^{i,j,'}_u A^{j,i}_{v,u} + ybar^{i,j,'}_u A(-r)^{j,i}_{v,u} ],
// the (j, i) pairing placing the derivative direction in the inner slot.
// The germ borrows `integrand`; keep it alive while the germ is in use.
Germ convolution_germ(const DelayedControlledVector& integrand);

// int_0^{t_node} S_{t,s} y_s . dXbar_s by sewing; refine_levels < 0 refines to
// single-cell resolution.
SewResult rough_convolution(const DelayedRoughDriver& drv, const DelayedControlledVector& y,
                            const SemigroupSpec& sg, std::int64_t t_node,
                            int refine_levels = -1);

// Values at every node of the integrand's grid via the exact one-step
// recursion zeta_t = S_dt (zeta_{t-dt} + f_{t, t-dt}); equals the finest
// partition sum up to fp re-association.
std::vector<SpectralVector> convolution_series(const DelayedRoughDriver& drv,
                                               const DelayedControlledVector& y,
                                               const SemigroupSpec& sg);

struct ExpansionFit {
    double slope = 0.0;
    bool exact = false;  // all sampled errors at rounding level, no slope to fit
    int pairs = 0;
};

// Fits log ||int_s^t - S_{t,s} germ_{t,s}||(theta - 2 alpha + beta) against
// log(t-s) over sampled pairs; the sewing bound predicts slope >= 3 alpha - beta.
ExpansionFit local_expansion_error(const DelayedRoughDriver& drv,
                                   const DelayedControlledVector& y, const SemigroupSpec& sg,
                                   double alpha, double beta, int pair_sample,
                                   std::uint64_t rng_seed);

struct ConvolutionControlledReport {
    DelayedControlledPath zeta;  // non-delayed, zeta' = y levels, tagged theta + sigma
    double norm_lhs_ii = 0.0;    // ||zeta, zeta'||_{X, 2 a_tilde, theta+sigma}
    double bound_rhs_ii = 0.0;   // (1+rho) ||y,..||_{2 a_tilde, theta} T^{lambda0} + ||y_0||_theta
    double ratio_ii = 0.0;
    double norm_lhs_iii = 0.0;   // same at exponent 2 alpha
    double bound_rhs_iii = 0.0;
    double ratio_iii = 0.0;
    double lambda0 = 0.0;        // (alpha - a_tilde) ^ (a_tilde - sigma)
};

// requires sigma in (0, a_tilde)
ConvolutionControlledReport convolution_as_controlled(const DelayedRoughDriver& drv,
                                                      const DelayedControlledVector& y,
                                                      const SemigroupSpec& sg, double alpha,
                                                      double a_tilde, double sigma);

struct ConvolutionStabilityReport {
    double lhs = 0.0;           // rho_{2 a_tilde, 2 alpha, theta+sigma}(zeta, chi)
    double path_term = 0.0;     // rho_{2 a_tilde, 2 alpha, theta}(y, z) * T^lambda
    double driver_term = 0.0;   // rho_alpha(Xbar, Ybar)
    double initial_term = 0.0;  // sum_i ||y^i_0 - z^i_0||_theta
    double lambda = 0.0;
};

// requires a_tilde in (sigma, alpha) with 3 a_tilde - 2 alpha - sigma > 0
ConvolutionStabilityReport convolution_stability(const DelayedRoughDriver& dx,
                                                 const DelayedControlledVector& y,
                                                 const DelayedRoughDriver& dy,
                                                 const DelayedControlledVector& z,
                                                 const SemigroupSpec& sg, double alpha,
                                                 double a_tilde, double sigma);

}  // namespace drough
