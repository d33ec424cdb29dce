#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drough/spectral.hpp"

namespace drough {

/*
 * Nonlinearity bank. Each spec describes a map B^2 -> B^{n_out} with declared
 * smoothing order sigma (the output is read in B_{theta - sigma}).
 *
 *   affine                G_i(y, z) = a_i y + b_i z + offset_i
 *   frac_laplacian_affine G_i(y, z) = (-Lap)^{sigma} (a_i y + b_i z),
 *                         multiplier (k^2)^{sigma}, 0 at k = 0
 *   smooth_bounded        G_i(y, z) = scale * T_K0[ sin( T_K0[a_i y + b_i z] ) ],
 *                         T_K0 = spectral truncation to |k| <= cutoff; the
 *                         pointwise sin runs on a collocation grid of
 *                         max(4 * cutoff, 8) points (no aliasing onto the
 *                         kept band from the band-limited part)
 *
 * The first two have constant Fréchet derivative and vanishing higher
 * derivatives; smooth_bounded has all derivatives bounded (cos / sin chains
 * through the same collocation), with constants controlled by `scale`.
 */
enum class NonlinKind { affine, frac_laplacian_affine, smooth_bounded };

struct NonlinearitySpec {
    NonlinKind kind = NonlinKind::affine;
    int n_out = 1;
    std::vector<double> a;  // per output component
    std::vector<double> b;
    std::vector<SpectralVector> offset;  // affine only; empty = zero
    double sigma = 0.0;                  // declared smoothing (and frac exponent)
    int cutoff = 8;                      // smooth_bounded band limit K0
    double scale = 1.0;                  // smooth_bounded output rescaling

    bool zero() const;  // identically zero map (all weights and offsets zero)
    static NonlinearitySpec zero_map(int n_out);
    static NonlinearitySpec affine(std::vector<double> a, std::vector<double> b, double sigma,
                                   std::vector<SpectralVector> offset = {});
    static NonlinearitySpec frac_laplacian(std::vector<double> a, std::vector<double> b,
                                           double sigma);
    static NonlinearitySpec smooth_bounded(std::vector<double> a, std::vector<double> b,
                                           int cutoff, double scale, double sigma);
};

// G(y, z), one SpectralVector per output component.
std::vector<SpectralVector> eval_G(const NonlinearitySpec& spec, const SpectralVector& y,
                                   const SpectralVector& z);

// Fréchet derivative in the given argument slot applied to `direction`.
std::vector<SpectralVector> eval_DG(const NonlinearitySpec& spec, const SpectralVector& y,
                                    const SpectralVector& z, const SpectralVector& direction,
                                    int slot);

// Second derivative applied to a pair of directions (slots s1, s2 in {1,2});
// zero for the affine kinds. Used by the remainder-decomposition checks.
std::vector<SpectralVector> eval_D2G(const NonlinearitySpec& spec, const SpectralVector& y,
                                     const SpectralVector& z, const SpectralVector& h1, int s1,
                                     const SpectralVector& h2, int s2);

// Empirical Lipschitz constant of (y, z) -> D_{x1}G_i(y, z) o [G_j(y, z)] in
// ||.||_{theta - 2 alpha - sigma}, maximized over sampled bounded pairs and
// over (i, j). Finite for every bank kind; exact |a_i| Lip(G_j) for affine.
double verify_H4_product_bound(const NonlinearitySpec& spec, int samples, double theta,
                               double alpha, int max_mode, std::uint64_t rng_seed);

}  // namespace drough
