#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace drough {

// Deterministic, portable Gaussian stream: mt19937_64 (output sequence fixed
// by the standard) + explicit Box-Muller, no library distributions.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : gen_(seed) {}

    double uniform01() {  // in (0, 1]
        return (double(gen_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * 3.14159265358979323846 * u2;
        spare_ = rad * std::sin(ang);
        have_spare_ = true;
        return rad * std::cos(ang);
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace drough
