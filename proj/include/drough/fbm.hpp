#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "drough/rough_driver.hpp"

namespace drough {

/*
 * Exact sampling of (two-sided) fractional Brownian motion on the fine
 * lattice by Cholesky factorization of the covariance
 *
 *   R(s, t) = ( |s|^{2H} + |t|^{2H} - |t-s|^{2H} ) / 2,
 *
 * which is valid for all real s, t; the node at t = 0 is pinned to 0.
 * The factorization depends only on (H, lattice) and is reused across seeds,
 * so Monte Carlo runs pay the O(n^3) cost once.
 */
class FbmSampler {
public:
    FbmSampler(double hurst, double dt_fine, std::int64_t i0_fine, std::int64_t n_fine);
    ~FbmSampler();
    FbmSampler(FbmSampler&&) noexcept;
    FbmSampler& operator=(FbmSampler&&) noexcept;

    double hurst() const { return hurst_; }
    std::int64_t n_fine() const { return n_fine_; }

    // node-major fine path, d independent components, deterministic in seed
    std::vector<double> sample_path(std::uint64_t seed, int d) const;

private:
    double hurst_;
    double dt_fine_;
    std::int64_t i0_fine_;
    std::int64_t n_fine_;
    std::int64_t zero_node_ = -1;  // fine node with t == 0, or -1
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Brownian fine path by independent Gaussian increments (no factorization).
std::vector<double> sample_brownian_fine_path(std::uint64_t seed, int d, double dt_fine,
                                              std::int64_t i0_fine, std::int64_t n_fine);

// X sampled exactly on the refinement subgrid of `grid`, then enhanced.
// hurst must lie in (1/3, 1/2]; deterministic in (seed, grid, d, subgrid, hurst).
DelayedRoughDriver sample_fbm(std::uint64_t seed, double hurst, const Grid& grid, int d,
                              std::int64_t subgrid_factor);

// Brownian driver with symmetric-sum (Stratonovich) second level.
DelayedRoughDriver sample_bm(std::uint64_t seed, const Grid& grid, int d,
                             std::int64_t subgrid_factor);

}  // namespace drough
