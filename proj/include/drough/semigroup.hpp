#pragma once

#include <utility>
#include <vector>

#include "drough/spectral.hpp"

namespace drough {

/*
 * Analytic semigroup S_t = e^{tA} on the spectral scale with A = diffusivity * Laplacian
 * on the torus, i.e. the Fourier multiplier e^{-diffusivity k^2 t}. diffusivity = 0
 * gives S_t = id (the A = 0 degenerate member used by the closed-form oracles).
 * The semigroup law S_t S_s = S_{t+s} and S_0 = id hold at multiplier level, and the
 * smoothing constants
 *
 *   sup_t t^sigma  |S_t|_{theta -> theta+sigma},   sup_t t^{-sigma} |S_t - id|_{theta+sigma -> theta}
 *
 * are exact maxima of multiplier ratios over modes (independent of theta:
 * the weight ratios cancel).
 */
struct SemigroupSpec {
    double diffusivity = 1.0;  // >= 0; multiplier is -diffusivity * k^2
};

SpectralVector apply_semigroup(const SemigroupSpec& spec, const SpectralVector& v, double t);

// Multiplier table e^{-diffusivity k^2 t} for k = 0..max_mode (reused in hot loops).
std::vector<double> semigroup_multipliers(const SemigroupSpec& spec, int max_mode, double t);

std::pair<double, double> smoothing_constants(const SemigroupSpec& spec, double theta,
                                              double sigma, int max_mode,
                                              const std::vector<double>& t_grid);

}  // namespace drough
