#include "drough/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace drough {

SpectralVector SpectralVector::single_mode(int k, cplx amplitude, int max_mode) {
    if (std::abs(k) > max_mode) throw std::invalid_argument("single_mode: |k| > max_mode");
    SpectralVector v(max_mode);
    v.at(k) = amplitude;
    return v;
}

bool SpectralVector::real_symmetric(double tol) const {
    for (int k = 0; k <= max_mode_; ++k) {
        if (std::abs(at(-k) - std::conj(at(k))) > tol) return false;
    }
    return true;
}

void promote_pair(SpectralVector& a, SpectralVector& b) {
    if (a.max_mode_ == b.max_mode_) return;
    const int k = std::max(a.max_mode_, b.max_mode_);
    auto grow = [k](SpectralVector& v) {
        SpectralVector w(k);
        for (int m = -v.max_mode_; m <= v.max_mode_; ++m) w.at(m) = v.at(m);
        v = std::move(w);
    };
    grow(a);
    grow(b);
}

SpectralVector& SpectralVector::operator+=(const SpectralVector& o) {
    if (o.max_mode_ <= max_mode_) {
        for (int k = -o.max_mode_; k <= o.max_mode_; ++k) at(k) += o.at(k);
        return *this;
    }
    SpectralVector tmp = o;
    promote_pair(*this, tmp);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += tmp.c_[i];
    return *this;
}

SpectralVector& SpectralVector::operator-=(const SpectralVector& o) {
    if (o.max_mode_ <= max_mode_) {
        for (int k = -o.max_mode_; k <= o.max_mode_; ++k) at(k) -= o.at(k);
        return *this;
    }
    SpectralVector tmp = o;
    promote_pair(*this, tmp);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= tmp.c_[i];
    return *this;
}

SpectralVector& SpectralVector::operator*=(double s) {
    for (auto& z : c_) z *= s;
    return *this;
}

SpectralVector& SpectralVector::axpy(double a, const SpectralVector& x) {
    if (x.max_mode_ <= max_mode_) {
        for (int k = -x.max_mode_; k <= x.max_mode_; ++k) at(k) += a * x.at(k);
        return *this;
    }
    SpectralVector tmp = x;
    promote_pair(*this, tmp);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += a * tmp.c_[i];
    return *this;
}

bool SpectralVector::bitwise_equal(const SpectralVector& o) const {
    if (max_mode_ != o.max_mode_) return false;
    return std::memcmp(c_.data(), o.c_.data(), c_.size() * sizeof(cplx)) == 0;
}

double sobolev_norm(const SpectralVector& v, double theta) {
    double s = 0.0;
    const int kk = v.max_mode();
    for (int k = -kk; k <= kk; ++k) {
        const double n2 = std::norm(v.at(k));
        if (n2 == 0.0) continue;
        s += std::pow(1.0 + double(k) * double(k), 2.0 * theta) * n2;
    }
    return std::sqrt(s);
}

SobolevWeights::SobolevWeights(int max_mode, double theta) : max_mode_(max_mode), theta_(theta) {
    w_.resize(2 * static_cast<std::size_t>(max_mode) + 1);
    for (int k = -max_mode; k <= max_mode; ++k)
        w_[static_cast<std::size_t>(k + max_mode)] =
            std::pow(1.0 + double(k) * double(k), 2.0 * theta);
}

double SobolevWeights::norm_sq(const SpectralVector& v) const {
    const int kk = v.max_mode();
    if (kk > max_mode_) throw std::invalid_argument("SobolevWeights: vector exceeds table");
    double s = 0.0;
    for (int k = -kk; k <= kk; ++k)
        s += w_[static_cast<std::size_t>(k + max_mode_)] * std::norm(v.at(k));
    return s;
}

double SobolevWeights::norm(const SpectralVector& v) const { return std::sqrt(norm_sq(v)); }

double interpolation_inequality_check(const SpectralVector& v, double theta1, double theta2,
                                      double theta3) {
    if (!(theta1 <= theta2 && theta2 <= theta3))
        throw std::invalid_argument("interpolation_inequality_check: need theta1<=theta2<=theta3");
    const double n1 = sobolev_norm(v, theta1);
    const double n2 = sobolev_norm(v, theta2);
    const double n3 = sobolev_norm(v, theta3);
    if (n1 == 0.0 || n2 == 0.0 || n3 == 0.0) return 0.0;
    // ratio of logs avoids overflow for wide theta spans
    const double logr = (theta3 - theta1) * std::log(n2) - (theta3 - theta2) * std::log(n1) -
                        (theta2 - theta1) * std::log(n3);
    return std::exp(logr);
}

}  // namespace drough
