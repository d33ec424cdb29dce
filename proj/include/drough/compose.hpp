#pragma once

#include "drough/controlled_path.hpp"
#include "drough/nonlinearity.hpp"

namespace drough {

/*
 * Composition of two controlled paths with a regular map: for p on I and q
 * covering I - r (both controlled by the same X),
 *
 *   m_t      = G(y_t, z_{t-r})
 *   m'_t     = D_{x1} G(y_t, z_{t-r}) o y'_t
 *   mbar'_t  = D_{x2} G(y_t, z_{t-r}) o z'_{t-r}
 *
 * is a delayed controlled path at regularity theta - sigma, one component per
 * output of G. q == p is allowed (the r = 0 self-composition the solver uses).
 */
DelayedControlledVector compose(const NonlinearitySpec& G, const DelayedControlledPath& p,
                                const DelayedControlledPath& q);

// As compose, but requires y'^{,i}_t == G_i(y_t, z_{t-r}) node-wise first; the
// error names the first offending node.
DelayedControlledVector compose_self_derivative(const NonlinearitySpec& G,
                                                const DelayedControlledPath& p,
                                                const DelayedControlledPath& q,
                                                double check_tol = 1e-10);

struct ComposeDifferenceReport {
    double diff_norm = 0.0;  // ||(m-l, m'-l', mbar'-lbar')||_{X, 2a, theta-sigma}
    double rhs = 0.0;        // Lipschitz-of-composition right-hand side without the constant
    double ratio = 0.0;      // diff_norm / rhs (0 when both vanish)
};

// Difference of the compositions through (p, q) and (u, v); the rhs is
// (1 + rho_I1 + rho_I2)^2 * (dist of inputs) * (1 + sum of input norms)^2.
ComposeDifferenceReport compose_difference(const NonlinearitySpec& G,
                                           const DelayedControlledPath& p,
                                           const DelayedControlledPath& q,
                                           const DelayedControlledPath& u,
                                           const DelayedControlledPath& v, double alpha,
                                           double theta);

}  // namespace drough
