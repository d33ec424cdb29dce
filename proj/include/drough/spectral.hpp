#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace drough {

/*
 * Element of the interpolation scale B_theta realized as Fourier data on the
 * 1-d torus: modes k = -K..K with complex amplitudes c_k and
 *
 *   ||v||_theta = ( sum_k (1+k^2)^{2 theta} |c_k|^2 )^{1/2}.
 *
 * The family is monotone (theta1 <= theta2 implies ||.||_{theta1} <= ||.||_{theta2})
 * and satisfies the three-point interpolation inequality
 *
 *   ||v||_{theta2}^{theta3-theta1} <= ||v||_{theta1}^{theta3-theta2} ||v||_{theta3}^{theta2-theta1}
 *
 * with constant exactly 1 (Hölder on the weighted sums). Everything here is a
 * finite sum, so every norm is exactly computable.
 */
class SpectralVector {
public:
    using cplx = std::complex<double>;

    SpectralVector() = default;
    explicit SpectralVector(int max_mode)
        : max_mode_(max_mode), c_(2 * static_cast<std::size_t>(max_mode) + 1) {}

    static SpectralVector zero(int max_mode) { return SpectralVector(max_mode); }
    static SpectralVector single_mode(int k, cplx amplitude, int max_mode);

    int max_mode() const { return max_mode_; }
    std::size_t size() const { return c_.size(); }

    cplx& at(int k) { return c_[static_cast<std::size_t>(k + max_mode_)]; }
    const cplx& at(int k) const { return c_[static_cast<std::size_t>(k + max_mode_)]; }

    const std::vector<cplx>& coeffs() const { return c_; }
    std::vector<cplx>& coeffs() { return c_; }

    // c_{-k} == conj(c_k) for all modes (real-valued field on the torus)
    bool real_symmetric(double tol = 1e-14) const;

    SpectralVector& operator+=(const SpectralVector& o);
    SpectralVector& operator-=(const SpectralVector& o);
    SpectralVector& operator*=(double s);
    SpectralVector& axpy(double a, const SpectralVector& x);  // *this += a*x

    friend SpectralVector operator+(SpectralVector a, const SpectralVector& b) { return a += b; }
    friend SpectralVector operator-(SpectralVector a, const SpectralVector& b) { return a -= b; }
    friend SpectralVector operator*(double s, SpectralVector v) { return v *= s; }

    bool bitwise_equal(const SpectralVector& o) const;

private:
    int max_mode_ = 0;
    std::vector<cplx> c_{cplx(0.0, 0.0)};

    friend void promote_pair(SpectralVector& a, SpectralVector& b);
};

// ||v||_theta
double sobolev_norm(const SpectralVector& v, double theta);

// Precomputed weights (1+k^2)^{2 theta} for hot loops; handles vectors with
// smaller max_mode transparently.
class SobolevWeights {
public:
    SobolevWeights(int max_mode, double theta);
    double theta() const { return theta_; }
    double norm(const SpectralVector& v) const;
    double norm_sq(const SpectralVector& v) const;

private:
    int max_mode_;
    double theta_;
    std::vector<double> w_;  // indexed by k + max_mode_
};

// ||v||_{theta2}^{theta3-theta1} / ( ||v||_{theta1}^{theta3-theta2} ||v||_{theta3}^{theta2-theta1} ),
// 0 by convention for the zero vector. Must be <= 1 + 1e-10.
double interpolation_inequality_check(const SpectralVector& v, double theta1, double theta2,
                                      double theta3);

}  // namespace drough
