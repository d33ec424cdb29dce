#pragma once

#include <functional>
#include <optional>

#include "drough/fbm.hpp"
#include "drough/solver.hpp"

namespace drough {

/*
 * Delay-to-zero convergence experiment: per (r, seed) solve
 *
 *   dy = [A y + F(y)] dt + G(y_{t-r}) . dXbar      (noise in the delayed slot)
 *   dz = [A z + F(z)] dt + G(z_t) . dX             (noise in the current slot)
 *
 * with the same X and the same second level (one fine path per seed covers
 * [-r_max, T]; every r is enhanced from it, so the pair and the whole r-row
 * are coupled). The undelayed solve carries ybar' == 0 through the same
 * sewing machinery and never touches the delayed area. Reported per r: the
 * median of rho_{2 alpha_bar, 2 alpha, theta - alpha}(y, z) and the median
 * area gap h(r); rows with failed solves are flagged and skipped.
 */

NonlinearitySpec swap_slots(const NonlinearitySpec& spec);

struct DelayConvergenceSetup {
    SemigroupSpec semigroup;
    NonlinearitySpec drift;  // one-argument F(y): slot-1 weights, b = 0
    NonlinearitySpec noise;  // one-argument G in DELAYED form: slot-2 weights, a = 0
    double T = 1.0;
    double theta = 1.0;
    double alpha = 0.45;
    double alpha_tilde = 0.42;
    double alpha_bar = 0.42;
    double alpha_hat = 0.42;
    double dt = 1.0 / 320.0;
    std::vector<std::int64_t> r_steps;  // decreasing, each > 0
    std::vector<std::uint64_t> seeds;
    DriverFlavor flavor = DriverFlavor::bm_ito;
    double hurst = 0.5;
    int d = 1;
    std::int64_t subgrid = 8;
    SpectralVector phi_value;  // phi(-r); constant history unless directions given
    // driver-linear history phi_t = phi(-r) + sum_i c_i (X^i_t - X^i_{-r}); a slope
    // matched to G(z_0) makes the initial data first-order compatible, which the
    // smooth-model slope fit needs (a flat history costs a r^{1 - alpha_bar} term)
    std::vector<SpectralVector> phi_directions;
    std::function<std::vector<double>(double)> deterministic_path;  // deterministic flavor only
    SolveOptions solve_opts;
    int threads = 1;
};

struct ConvergenceRow {
    double r = 0.0;
    double median_rho = 0.0;
    double median_h = 0.0;
    int failures = 0;
    int cells = 0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double fitted_slope = 0.0;  // of log(median rho) against log r
};

ConvergenceTable delay_convergence_experiment(const DelayConvergenceSetup& setup);

/*
 * Stability experiment: one base solve, then re-solves under initial-data or
 * driver perturbations of increasing magnitude; each row reports the solution
 * distance rho_{2 alpha_hat, 2 alpha, theta} and the input distance
 * U = rho(phi, psi) + rho_alpha(Xbar, Ybar).
 */
struct StabilitySetup {
    ModelSpec model;
    double dt = 1.0 / 256.0;
    std::int64_t r_steps = 32;
    std::uint64_t seed = 1;
    DriverFlavor flavor = DriverFlavor::bm_stratonovich;
    double hurst = 0.5;
    int d = 1;
    std::int64_t subgrid = 8;
    SpectralVector phi_value;
    enum class Kind { initial_data, driver } kind = Kind::initial_data;
    SpectralVector direction;  // initial-data shift direction
    std::function<double(double, int)> path_bump;  // smooth driver bump per component
    std::vector<double> magnitudes;
    SolveOptions solve_opts;
};

struct StabilityRow {
    double magnitude = 0.0;
    double rho = 0.0;
    double u = 0.0;
};

std::vector<StabilityRow> stability_experiment(const StabilitySetup& setup);

// Driver factory shared by the experiments and the CLI.
struct DriverRequest {
    DriverFlavor flavor = DriverFlavor::bm_stratonovich;
    double hurst = 0.45;
    int d = 1;
    std::int64_t subgrid = 8;
    std::uint64_t seed = 1;
    std::function<std::vector<double>(double)> deterministic_path;
};

DelayedRoughDriver build_driver(const DriverRequest& req, const Grid& grid);

}  // namespace drough
