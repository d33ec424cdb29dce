#include "drough/fbm.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "drough/rng.hpp"

namespace drough {

struct FbmSampler::Impl {
    Eigen::MatrixXd chol;  // lower factor over the non-zero nodes
};

FbmSampler::FbmSampler(double hurst, double dt_fine, std::int64_t i0_fine, std::int64_t n_fine)
    : hurst_(hurst), dt_fine_(dt_fine), i0_fine_(i0_fine), n_fine_(n_fine),
      impl_(std::make_unique<Impl>()) {
    if (n_fine < 2) throw std::invalid_argument("FbmSampler: degenerate lattice");
    if (n_fine > 4096)
        throw std::invalid_argument(
            "FbmSampler: exact Cholesky sampling supports at most 4096 fine nodes; "
            "reduce the subgrid factor or the grid size");
    if (!(hurst > 0.0 && hurst <= 1.0)) throw std::invalid_argument("FbmSampler: bad hurst");

    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(n_fine));
    for (std::int64_t k = 0; k < n_fine; ++k) {
        if (i0_fine + k == 0) {
            zero_node_ = k;
            continue;
        }
        times.push_back(double(i0_fine + k) * dt_fine);
    }
    const auto m = static_cast<Eigen::Index>(times.size());
    Eigen::MatrixXd cov(m, m);
    const double h2 = 2.0 * hurst;
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b <= a; ++b) {
            const double s = times[static_cast<std::size_t>(a)];
            const double t = times[static_cast<std::size_t>(b)];
            const double v = 0.5 * (std::pow(std::abs(s), h2) + std::pow(std::abs(t), h2) -
                                    std::pow(std::abs(t - s), h2));
            cov(a, b) = v;
            cov(b, a) = v;
        }
    double jitter = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Eigen::LLT<Eigen::MatrixXd> llt(cov);
        if (llt.info() == Eigen::Success) {
            impl_->chol = llt.matrixL();
            return;
        }
        jitter = (jitter == 0.0) ? 1e-14 * cov.diagonal().maxCoeff() : jitter * 16.0;
        cov.diagonal().array() += jitter;
    }
    throw std::runtime_error("FbmSampler: Cholesky failed on degenerate grid");
}

FbmSampler::~FbmSampler() = default;
FbmSampler::FbmSampler(FbmSampler&&) noexcept = default;
FbmSampler& FbmSampler::operator=(FbmSampler&&) noexcept = default;

std::vector<double> FbmSampler::sample_path(std::uint64_t seed, int d) const {
    GaussianStream gs(seed);
    const Eigen::Index m = impl_->chol.rows();
    std::vector<double> out(static_cast<std::size_t>(n_fine_) * d, 0.0);
    Eigen::VectorXd z(m), x(m);
    for (int c = 0; c < d; ++c) {
        for (Eigen::Index a = 0; a < m; ++a) z(a) = gs.next();
        x = impl_->chol.template triangularView<Eigen::Lower>() * z;
        Eigen::Index a = 0;
        for (std::int64_t k = 0; k < n_fine_; ++k) {
            if (k == zero_node_) continue;  // pinned to 0
            out[static_cast<std::size_t>(k) * d + c] = x(a++);
        }
    }
    return out;
}

std::vector<double> sample_brownian_fine_path(std::uint64_t seed, int d, double dt_fine,
                                              std::int64_t i0_fine, std::int64_t n_fine) {
    GaussianStream gs(seed);
    const double sd = std::sqrt(dt_fine);
    std::vector<double> out(static_cast<std::size_t>(n_fine) * d, 0.0);
    std::int64_t zero_node = -i0_fine;  // may be outside [0, n)
    if (zero_node < 0) zero_node = 0;
    if (zero_node > n_fine - 1) zero_node = n_fine - 1;
    for (int c = 0; c < d; ++c) {
        // walk right then left from the pinned node so X_0 = 0 exactly
        double acc = 0.0;
        for (std::int64_t k = zero_node + 1; k < n_fine; ++k) {
            acc += sd * gs.next();
            out[static_cast<std::size_t>(k) * d + c] = acc;
        }
        acc = 0.0;
        for (std::int64_t k = zero_node - 1; k >= 0; --k) {
            acc -= sd * gs.next();
            out[static_cast<std::size_t>(k) * d + c] = acc;
        }
    }
    return out;
}

DelayedRoughDriver sample_fbm(std::uint64_t seed, double hurst, const Grid& grid, int d,
                              std::int64_t subgrid_factor) {
    if (!(hurst > 1.0 / 3.0 && hurst <= 0.5))
        throw std::invalid_argument("sample_fbm: hurst must lie in (1/3, 1/2]");
    if (subgrid_factor < 1) throw std::invalid_argument("sample_fbm: subgrid_factor >= 1");
    const std::int64_t nf = (grid.n - 1) * subgrid_factor + 1;
    FbmSampler sampler(hurst, grid.dt / double(subgrid_factor), grid.i0 * subgrid_factor, nf);
    const auto fine = sampler.sample_path(seed, d);
    return enhance_from_fine_path(fine, grid, d, subgrid_factor, DriverFlavor::fbm_symmetric,
                                  seed, hurst);
}

DelayedRoughDriver sample_bm(std::uint64_t seed, const Grid& grid, int d,
                             std::int64_t subgrid_factor) {
    if (subgrid_factor < 1) throw std::invalid_argument("sample_bm: subgrid_factor >= 1");
    const std::int64_t nf = (grid.n - 1) * subgrid_factor + 1;
    const auto fine = sample_brownian_fine_path(seed, d, grid.dt / double(subgrid_factor),
                                                grid.i0 * subgrid_factor, nf);
    return enhance_from_fine_path(fine, grid, d, subgrid_factor, DriverFlavor::bm_stratonovich,
                                  seed, 0.5);
}

}  // namespace drough
