#include "drough/nonlinearity.hpp"

#include <cmath>
#include <stdexcept>

#include "drough/rng.hpp"

namespace drough {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

SpectralVector truncate(const SpectralVector& v, int cutoff) {
    SpectralVector out(cutoff);
    const int kk = std::min(cutoff, v.max_mode());
    for (int k = -kk; k <= kk; ++k) out.at(k) = v.at(k);
    return out;
}

// values of a band-limited field on the N-point collocation grid
std::vector<std::complex<double>> to_collocation(const SpectralVector& v, int n_coll) {
    std::vector<std::complex<double>> vals(static_cast<std::size_t>(n_coll));
    const int kk = v.max_mode();
    for (int j = 0; j < n_coll; ++j) {
        const double x = kTwoPi * double(j) / double(n_coll);
        std::complex<double> s = 0.0;
        for (int k = -kk; k <= kk; ++k)
            s += v.at(k) * std::complex<double>(std::cos(k * x), std::sin(k * x));
        vals[static_cast<std::size_t>(j)] = s;
    }
    return vals;
}

SpectralVector from_collocation(const std::vector<std::complex<double>>& vals, int cutoff) {
    const int n_coll = static_cast<int>(vals.size());
    SpectralVector out(cutoff);
    for (int k = -cutoff; k <= cutoff; ++k) {
        std::complex<double> s = 0.0;
        for (int j = 0; j < n_coll; ++j) {
            const double x = kTwoPi * double(j) / double(n_coll);
            s += vals[static_cast<std::size_t>(j)] *
                 std::complex<double>(std::cos(k * x), -std::sin(k * x));
        }
        out.at(k) = s / double(n_coll);
    }
    return out;
}

int coll_points(int cutoff) { return std::max(4 * cutoff, 8); }

double weight_of(const NonlinearitySpec& spec, int comp, int slot) {
    return slot == 1 ? spec.a[static_cast<std::size_t>(comp)]
                     : spec.b[static_cast<std::size_t>(comp)];
}

SpectralVector frac_laplacian_apply(const SpectralVector& v, double sigma) {
    SpectralVector out = v;
    const int kk = v.max_mode();
    for (int k = -kk; k <= kk; ++k) {
        const double k2 = double(k) * double(k);
        out.at(k) *= (k == 0) ? 0.0 : std::pow(k2, sigma);
    }
    return out;
}

void check_spec(const NonlinearitySpec& spec) {
    if (spec.n_out < 1) throw std::invalid_argument("NonlinearitySpec: n_out must be >= 1");
    if (spec.a.size() != static_cast<std::size_t>(spec.n_out) ||
        spec.b.size() != static_cast<std::size_t>(spec.n_out))
        throw std::invalid_argument("NonlinearitySpec: weight arrays must have n_out entries");
}

}  // namespace

bool NonlinearitySpec::zero() const {
    for (double v : a)
        if (v != 0.0) return false;
    for (double v : b)
        if (v != 0.0) return false;
    for (const auto& o : offset)
        if (sobolev_norm(o, 0.0) != 0.0) return false;
    return true;
}

NonlinearitySpec NonlinearitySpec::zero_map(int n_out) {
    NonlinearitySpec s;
    s.kind = NonlinKind::affine;
    s.n_out = n_out;
    s.a.assign(static_cast<std::size_t>(n_out), 0.0);
    s.b.assign(static_cast<std::size_t>(n_out), 0.0);
    return s;
}

NonlinearitySpec NonlinearitySpec::affine(std::vector<double> a, std::vector<double> b,
                                          double sigma, std::vector<SpectralVector> offset) {
    NonlinearitySpec s;
    s.kind = NonlinKind::affine;
    s.n_out = static_cast<int>(a.size());
    s.a = std::move(a);
    s.b = std::move(b);
    s.offset = std::move(offset);
    s.sigma = sigma;
    check_spec(s);
    return s;
}

NonlinearitySpec NonlinearitySpec::frac_laplacian(std::vector<double> a, std::vector<double> b,
                                                  double sigma) {
    NonlinearitySpec s;
    s.kind = NonlinKind::frac_laplacian_affine;
    s.n_out = static_cast<int>(a.size());
    s.a = std::move(a);
    s.b = std::move(b);
    s.sigma = sigma;
    check_spec(s);
    return s;
}

NonlinearitySpec NonlinearitySpec::smooth_bounded(std::vector<double> a, std::vector<double> b,
                                                  int cutoff, double scale, double sigma) {
    NonlinearitySpec s;
    s.kind = NonlinKind::smooth_bounded;
    s.n_out = static_cast<int>(a.size());
    s.a = std::move(a);
    s.b = std::move(b);
    s.cutoff = cutoff;
    s.scale = scale;
    s.sigma = sigma;
    check_spec(s);
    return s;
}

std::vector<SpectralVector> eval_G(const NonlinearitySpec& spec, const SpectralVector& y,
                                   const SpectralVector& z) {
    check_spec(spec);
    std::vector<SpectralVector> out;
    out.reserve(static_cast<std::size_t>(spec.n_out));
    for (int i = 0; i < spec.n_out; ++i) {
        SpectralVector lin = spec.a[static_cast<std::size_t>(i)] * y;
        lin.axpy(spec.b[static_cast<std::size_t>(i)], z);
        switch (spec.kind) {
            case NonlinKind::affine: {
                if (static_cast<std::size_t>(i) < spec.offset.size())
                    lin += spec.offset[static_cast<std::size_t>(i)];
                out.push_back(std::move(lin));
                break;
            }
            case NonlinKind::frac_laplacian_affine:
                out.push_back(frac_laplacian_apply(lin, spec.sigma));
                break;
            case NonlinKind::smooth_bounded: {
                const SpectralVector u = truncate(lin, spec.cutoff);
                auto vals = to_collocation(u, coll_points(spec.cutoff));
                for (auto& v : vals) v = std::sin(v);
                SpectralVector g = from_collocation(vals, spec.cutoff);
                g *= spec.scale;
                out.push_back(std::move(g));
                break;
            }
        }
    }
    return out;
}

std::vector<SpectralVector> eval_DG(const NonlinearitySpec& spec, const SpectralVector& y,
                                    const SpectralVector& z, const SpectralVector& direction,
                                    int slot) {
    check_spec(spec);
    if (slot != 1 && slot != 2) throw std::invalid_argument("eval_DG: slot must be 1 or 2");
    std::vector<SpectralVector> out;
    out.reserve(static_cast<std::size_t>(spec.n_out));
    for (int i = 0; i < spec.n_out; ++i) {
        const double w = weight_of(spec, i, slot);
        switch (spec.kind) {
            case NonlinKind::affine:
                out.push_back(w * direction);
                break;
            case NonlinKind::frac_laplacian_affine:
                out.push_back(frac_laplacian_apply(w * direction, spec.sigma));
                break;
            case NonlinKind::smooth_bounded: {
                SpectralVector lin = spec.a[static_cast<std::size_t>(i)] * y;
                lin.axpy(spec.b[static_cast<std::size_t>(i)], z);
                const int n = coll_points(spec.cutoff);
                auto u = to_collocation(truncate(lin, spec.cutoff), n);
                auto h = to_collocation(truncate(w * direction, spec.cutoff), n);
                for (int j = 0; j < n; ++j)
                    h[static_cast<std::size_t>(j)] *= std::cos(u[static_cast<std::size_t>(j)]);
                SpectralVector g = from_collocation(h, spec.cutoff);
                g *= spec.scale;
                out.push_back(std::move(g));
                break;
            }
        }
    }
    return out;
}

std::vector<SpectralVector> eval_D2G(const NonlinearitySpec& spec, const SpectralVector& y,
                                     const SpectralVector& z, const SpectralVector& h1, int s1,
                                     const SpectralVector& h2, int s2) {
    check_spec(spec);
    std::vector<SpectralVector> out;
    out.reserve(static_cast<std::size_t>(spec.n_out));
    for (int i = 0; i < spec.n_out; ++i) {
        if (spec.kind != NonlinKind::smooth_bounded) {
            out.push_back(SpectralVector::zero(1));  // constant derivative kinds
            continue;
        }
        SpectralVector lin = spec.a[static_cast<std::size_t>(i)] * y;
        lin.axpy(spec.b[static_cast<std::size_t>(i)], z);
        const int n = coll_points(spec.cutoff);
        auto u = to_collocation(truncate(lin, spec.cutoff), n);
        auto v1 = to_collocation(truncate(weight_of(spec, i, s1) * h1, spec.cutoff), n);
        auto v2 = to_collocation(truncate(weight_of(spec, i, s2) * h2, spec.cutoff), n);
        for (int j = 0; j < n; ++j)
            v1[static_cast<std::size_t>(j)] *= -std::sin(u[static_cast<std::size_t>(j)]) *
                                               v2[static_cast<std::size_t>(j)];
        SpectralVector g = from_collocation(v1, spec.cutoff);
        g *= spec.scale;
        out.push_back(std::move(g));
    }
    return out;
}

double verify_H4_product_bound(const NonlinearitySpec& spec, int samples, double theta,
                               double alpha, int max_mode, std::uint64_t rng_seed) {
    check_spec(spec);
    GaussianStream gs(rng_seed);
    auto random_field = [&](double bound) {
        SpectralVector v(max_mode);
        for (int k = 0; k <= max_mode; ++k) {
            const double decay = std::pow(1.0 + double(k) * double(k), -theta - 0.75);
            const std::complex<double> amp(gs.next() * decay, k == 0 ? 0.0 : gs.next() * decay);
            v.at(k) = amp;
            if (k > 0) v.at(-k) = std::conj(amp);
        }
        const double nrm = sobolev_norm(v, theta);
        if (nrm > bound) v *= bound / nrm;
        return v;
    };

    const double out_theta = theta - 2.0 * alpha - spec.sigma;
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const SpectralVector y1 = random_field(1.0), z1 = random_field(1.0);
        const SpectralVector y2 = random_field(1.0), z2 = random_field(1.0);
        const double den = sobolev_norm(y1 - y2, theta - alpha) +
                           sobolev_norm(z1 - z2, theta - alpha);
        if (den < 1e-12) continue;
        const auto g1 = eval_G(spec, y1, z1);
        const auto g2 = eval_G(spec, y2, z2);
        for (int i = 0; i < spec.n_out; ++i) {
            for (int j = 0; j < spec.n_out; ++j) {
                const auto v1 = eval_DG(spec, y1, z1, g1[static_cast<std::size_t>(j)], 1);
                const auto v2 = eval_DG(spec, y2, z2, g2[static_cast<std::size_t>(j)], 1);
                const double num =
                    sobolev_norm(v1[static_cast<std::size_t>(i)] - v2[static_cast<std::size_t>(i)],
                                 out_theta);
                worst = std::max(worst, num / den);
            }
        }
    }
    return worst;
}

}  // namespace drough
