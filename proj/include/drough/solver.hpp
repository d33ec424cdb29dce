#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drough/compose.hpp"
#include "drough/sewing.hpp"

namespace drough {

/*
 * Mild-solution solver for
 *
 *   dy_t = [A y_t + F(y_t, y_{t-r})] dt + G(y_t, y_{t-r}) . dXbar_t,   y|_{[-r,0]} = phi,
 *
 * as the fixed point of
 *
 *   T(y)_t = S_{t,a} y_a + int_a^t S_{t,s} F(y_s, y_{s-r}) ds
 *          + int_a^t S_{t,s} G(y_s, y_{s-r}) . dXbar_s
 *
 * on macro-steps of length <= min(r, 1) (any length when r = 0), concatenated
 * across [0, T]. Within [0, r] the delayed argument reads phi; past r it reads
 * the already-computed solution; at r = 0 it reads the current iterate, which
 * makes the delayed and undelayed solves share one code path. Step control is
 * empirical: a step is accepted when the Picard corrections contract below
 * the fixed-point tolerance, otherwise the step is halved (down to 4 grid
 * cells, then the solve aborts). Accepted steps recompute y' = G(y, y_delay)
 * from the final iterate, so the self-derivative identity holds to round-off.
 */

struct ModelExponents {
    double lambda0 = 0.0;      // (alpha - a_tilde) ^ (a_tilde - sigma2)       [convolution lift]
    double lambda1 = 0.0;      // (1 - 2 a_tilde) ^ (1 - sigma1)               [drift bound]
    double lambda2 = 0.0;      // (alpha - a_tilde) ^ (a_tilde - sigma2)       [noise bound]
    double lambda3 = 0.0;      // (alpha - sigma2) ^ (1 - 2 alpha) ^ (1 - sigma1)  [a priori]
    double lambda = 0.0;       // min{a-at, at(a-s2)/a, 3at-2a-s2}             [stability]
    double lambda_star = 0.0;  // min{1-s1, 1-2a, a-ab, ab(a-s2)/a, 3ab-2a-s2} [delay limit]
    double nu = 0.0;           // min{1-s1, 1-2ah, a-ah, ah(a-s2)/a, 3ah-2a-s2} [solution distance]
};

struct ModelSpec {
    SemigroupSpec semigroup;
    NonlinearitySpec F;  // two arguments, smoothing sigma1
    NonlinearitySpec G;  // d components, smoothing sigma2
    double r = 0.0;
    double T = 1.0;
    double theta = 0.0;
    double alpha = 0.45;
    double alpha_tilde = 0.42;
    double alpha_bar = 0.42;
    double alpha_hat = 0.42;
    ModelExponents exps;

    double sigma1() const { return F.sigma; }
    double sigma2() const { return G.sigma; }

    // validates the exponent hypotheses; convergence_run additionally checks
    // the delay-limit constraints on sigma2 and alpha_bar
    static ModelSpec make(SemigroupSpec sg, NonlinearitySpec F, NonlinearitySpec G, double r,
                          double T, double theta, double alpha, double alpha_tilde,
                          double alpha_bar, double alpha_hat, bool convergence_run = false);
};

// int_{a}^{t} S_{t,s} F(y_s, z_s) ds with the semigroup factor integrated
// exactly per mode against trapezoidal nodal values of F; y and z are node
// values on `grid` (z_s already the delayed argument at s).
SpectralVector drift_integral(const std::vector<SpectralVector>& y,
                              const std::vector<SpectralVector>& z_delayed,
                              const NonlinearitySpec& F, const SemigroupSpec& sg,
                              const Grid& grid, std::int64_t t_node);

// all nodes at once (same quadrature, one sweep)
std::vector<SpectralVector> drift_series(const std::vector<SpectralVector>& y,
                                         const std::vector<SpectralVector>& z_delayed,
                                         const NonlinearitySpec& F, const SemigroupSpec& sg,
                                         const Grid& grid);

enum class StepStatus { converged, not_contracting };

struct PicardStepResult {
    DelayedControlledPath segment;  // non-delayed controlled path on [a, a+step]
    int iterations = 0;
    double ratio = 0.0;  // contraction ratio observed on the first two corrections
    StepStatus status = StepStatus::converged;
};

// One macro-step on [a, a + step_nodes * dt]. `trajectory` must cover
// [a - r, a] (phi concatenated with the solution so far); ignored when r = 0.
PicardStepResult picard_step(const ModelSpec& model,
                             std::shared_ptr<const DelayedRoughDriver> driver,
                             const DelayedControlledPath& trajectory, const SpectralVector& y_a,
                             std::int64_t a_node, std::int64_t step_nodes, int max_iter);

struct StepRecord {
    std::int64_t a_node = 0;
    std::int64_t b_node = 0;
    int iterations = 0;
    double ratio = 0.0;
};

struct SolveReport {
    DelayedControlledPath solution;  // on [0, T], y' = G(y, y_delay) node-wise
    std::vector<StepRecord> steps;
    std::vector<ControlledNormReport> step_norms;
    double sup_norm = 0.0;         // sup_t ||y_t||_theta
    bool envelope_ok = true;       // per-step sups below the fitted exponential envelope
    double envelope_rate = 0.0;    // fitted growth rate
    std::shared_ptr<const DelayedRoughDriver> driver;
    DelayedControlledPath history;  // phi on [-r, 0]
};

struct SolveOptions {
    int max_iter = 40;
    std::int64_t max_step_nodes = 0;  // 0 = automatic (n/8, at least 8)
};

SolveReport solve(const ModelSpec& model, std::shared_ptr<const DelayedRoughDriver> driver,
                  const DelayedControlledPath& phi, const SolveOptions& opts = {});

struct SolutionDistanceReport {
    double rho = 0.0;        // rho_{2 alpha_hat, 2 alpha, theta, [0,T]}(y, z)
    double u_history = 0.0;  // rho_{2 alpha_hat, 2 alpha, theta, [-r,0]}(phi, psi)
    double u_driver = 0.0;   // rho_{alpha, [0,T]}(Xbar, Ybar)
    double u_total = 0.0;
    double m_bracket = 0.0;  // sum of solution/history norms and driver metrics
};

SolutionDistanceReport solution_distance(const SolveReport& a, const SolveReport& b,
                                         double alpha_hat, double alpha, double theta);

// a-posteriori fixed-point residual, max over nodes of
// ||y_t - S_t y_0 - drift_t - conv_t||_{theta - 2 alpha} / (1 + ||y||)
double fixed_point_residual(const ModelSpec& model, const SolveReport& report);

}  // namespace drough
