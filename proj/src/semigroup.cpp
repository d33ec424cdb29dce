#include "drough/semigroup.hpp"

#include <cmath>
#include <stdexcept>

namespace drough {

SpectralVector apply_semigroup(const SemigroupSpec& spec, const SpectralVector& v, double t) {
    if (t < 0.0) throw std::invalid_argument("apply_semigroup: t must be >= 0");
    if (spec.diffusivity < 0.0) throw std::invalid_argument("apply_semigroup: diffusivity < 0");
    SpectralVector out = v;
    const int kk = v.max_mode();
    for (int k = -kk; k <= kk; ++k)
        out.at(k) *= std::exp(-spec.diffusivity * double(k) * double(k) * t);
    return out;
}

std::vector<double> semigroup_multipliers(const SemigroupSpec& spec, int max_mode, double t) {
    std::vector<double> m(static_cast<std::size_t>(max_mode) + 1);
    for (int k = 0; k <= max_mode; ++k)
        m[static_cast<std::size_t>(k)] = std::exp(-spec.diffusivity * double(k) * double(k) * t);
    return m;
}

std::pair<double, double> smoothing_constants(const SemigroupSpec& spec, double theta,
                                              double sigma, int max_mode,
                                              const std::vector<double>& t_grid) {
    if (!(sigma >= 0.0 && sigma <= 1.0))
        throw std::invalid_argument("smoothing_constants: sigma must lie in [0,1]");
    double c0 = 0.0, c1 = 0.0;
    for (double t : t_grid) {
        if (!(t > 0.0)) throw std::invalid_argument("smoothing_constants: t_grid must be > 0");
        double op_up = 0.0;    // |S_t|_{theta -> theta+sigma}
        double op_diff = 0.0;  // |S_t - id|_{theta+sigma -> theta}
        for (int k = 0; k <= max_mode; ++k) {
            const double w = 1.0 + double(k) * double(k);
            const double e = std::exp(-spec.diffusivity * double(k) * double(k) * t);
            // written with the theta weights so their cancellation is the test, not an assumption
            const double up = std::pow(w, theta + sigma) * e / std::pow(w, theta);
            const double diff = std::pow(w, theta) * (1.0 - e) / std::pow(w, theta + sigma);
            op_up = std::max(op_up, up);
            op_diff = std::max(op_diff, diff);
        }
        c0 = std::max(c0, std::pow(t, sigma) * op_up);
        c1 = std::max(c1, std::pow(t, -sigma) * op_diff);
    }
    return {c0, c1};
}

}  // namespace drough
