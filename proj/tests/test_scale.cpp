#include <cmath>

#include "doctest.h"
#include "drough/grid_fn.hpp"
#include "drough/rng.hpp"
#include "drough/spectral.hpp"

using namespace drough;

namespace {

SpectralVector random_vector(GaussianStream& gs, int max_mode) {
    SpectralVector v(max_mode);
    for (int k = -max_mode; k <= max_mode; ++k) v.at(k) = {gs.next(), gs.next()};
    return v;
}

GridFn1 scalar_path(const Grid& g, double (*f)(double)) {
    GridFn1 out;
    out.grid = g;
    for (std::int64_t i = 0; i < g.n; ++i)
        out.values.push_back(SpectralVector::single_mode(0, f(g.time(i)), 0));
    return out;
}

}  // namespace

TEST_CASE("sobolev norm matches the weighted-sum definition") {
    CHECK(sobolev_norm(SpectralVector::single_mode(0, 1.0, 4), 5.0) == doctest::Approx(1.0));
    CHECK(sobolev_norm(SpectralVector::single_mode(1, 1.0, 4), 0.5) ==
          doctest::Approx(std::sqrt(2.0)));

    GaussianStream gs(1);
    for (int trial = 0; trial < 50; ++trial) {
        const SpectralVector v = random_vector(gs, 12);
        const double t1 = gs.uniform01() * 4.0 - 2.0;
        const double t2 = t1 + gs.uniform01() * 3.0;
        CHECK(sobolev_norm(v, t1) <= sobolev_norm(v, t2) * (1.0 + 1e-14));
    }
}

TEST_CASE("sobolev weights table agrees with the direct norm") {
    GaussianStream gs(2);
    const SpectralVector v = random_vector(gs, 20);
    const SobolevWeights w(32, 0.7);
    CHECK(w.norm(v) == doctest::Approx(sobolev_norm(v, 0.7)).epsilon(1e-14));
}

TEST_CASE("interpolation inequality holds with constant 1") {
    const SpectralVector single = SpectralVector::single_mode(3, {0.4, -1.2}, 8);
    CHECK(interpolation_inequality_check(single, -1.0, 0.25, 2.0) == doctest::Approx(1.0));
    CHECK(interpolation_inequality_check(SpectralVector::zero(8), 0.0, 0.5, 1.0) == 0.0);

    GaussianStream gs(3);
    for (int trial = 0; trial < 1000; ++trial) {
        const SpectralVector v = random_vector(gs, 16);
        const double t1 = gs.uniform01() * 4.0 - 2.0;
        const double t2 = t1 + gs.uniform01() * 2.0;
        const double t3 = t2 + gs.uniform01() * 2.0;
        CHECK(interpolation_inequality_check(v, t1, t2, t3) <= 1.0 + 1e-10);
    }
    CHECK_THROWS(interpolation_inequality_check(single, 1.0, 0.5, 2.0));
}

TEST_CASE("holder_norm2 on reference paths") {
    Grid g = Grid::over_ir(1.0 / 64.0, 0, 64);  // [0, 1]

    SUBCASE("identity path at alpha = 1") {
        const GridFn2 f = delta(scalar_path(g, [](double t) { return t; }));
        CHECK(holder_norm2(f, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("zero function") {
        const GridFn2 f = delta(scalar_path(g, [](double) { return 0.0; }));
        CHECK(holder_norm2(f, 0.5, 1.0) == 0.0);
    }
    SUBCASE("square root path at alpha = 1/2") {
        const GridFn2 f = delta(scalar_path(g, [](double t) { return std::sqrt(t); }));
        CHECK(holder_norm2(f, 0.5, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("degenerate grid is an error") {
        GridFn2 f;
        f.grid = g.subgrid(0, 1);
        f.eval = [](std::int64_t, std::int64_t) { return SpectralVector::zero(0); };
        CHECK_THROWS(holder_norm2(f, 0.5, 0.0));
    }
}

TEST_CASE("holder_norm3 on reference functions") {
    Grid g = Grid::over_ir(1.0 / 32.0, 0, 32);

    SUBCASE("delta delta vanishes") {
        GaussianStream gs(4);
        GridFn1 f;
        f.grid = g;
        for (std::int64_t i = 0; i < g.n; ++i) f.values.push_back(random_vector(gs, 6));
        const GridFn3 dd = delta(delta(f));
        CHECK(holder_norm3(dd, 0.5, 0.5, 0.0) <= 1e-12);
    }
    SUBCASE("product reference value") {
        GridFn3 f;
        f.grid = g;
        f.eval = [&g](std::int64_t lo, std::int64_t mid, std::int64_t hi) {
            const double v = (g.time(hi) - g.time(mid)) * (g.time(mid) - g.time(lo));
            return SpectralVector::single_mode(0, v, 0);
        };
        CHECK(holder_norm3(f, 1.0, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("too few nodes is an error") {
        GridFn3 f;
        f.grid = g.subgrid(0, 2);
        f.eval = [](std::int64_t, std::int64_t, std::int64_t) { return SpectralVector::zero(0); };
        CHECK_THROWS(holder_norm3(f, 1.0, 1.0, 0.0));
    }
}

TEST_CASE("holder norms are homogeneous and monotone under coarsening") {
    Grid g = Grid::over_ir(1.0 / 48.0, 0, 48);
    GaussianStream gs(5);
    GridFn1 f;
    f.grid = g;
    for (std::int64_t i = 0; i < g.n; ++i) f.values.push_back(random_vector(gs, 8));

    const GridFn2 df = delta(f);
    const double base = holder_norm2(df, 0.45, 0.3);

    GridFn1 scaled = f;
    for (auto& v : scaled.values) v *= -2.5;
    CHECK(holder_norm2(delta(scaled), 0.45, 0.3) == doctest::Approx(2.5 * base).epsilon(1e-12));

    // every 3rd node
    GridFn1 coarse;
    coarse.grid = Grid::over_ir(3.0 / 48.0, 0, 16);
    for (std::int64_t i = 0; i < g.n; i += 3) coarse.values.push_back(f.values[std::size_t(i)]);
    CHECK(holder_norm2(delta(coarse), 0.45, 0.3) <= base * (1.0 + 1e-14));
}

TEST_CASE("two-index interpolation bound with constant 1") {
    // ||f_{t,s}||_{theta-theta1} <= (||f||_{a,theta-a} + ||f||_{2a,theta-2a}) (t-s)^{theta1}
    Grid g = Grid::over_ir(1.0 / 40.0, 0, 40);
    GaussianStream gs(6);
    GridFn1 f;
    f.grid = g;
    for (std::int64_t i = 0; i < g.n; ++i) f.values.push_back(random_vector(gs, 10));
    const GridFn2 df = delta(f);

    const double alpha = 0.45, theta = 0.8;
    const double a_norm = holder_norm2(df, alpha, theta - alpha);
    const double b_norm = holder_norm2(df, 2.0 * alpha, theta - 2.0 * alpha);
    for (double theta1 : {alpha, 1.5 * alpha, 2.0 * alpha}) {
        for (std::int64_t lo = 0; lo < g.n - 1; lo += 7)
            for (std::int64_t hi = lo + 1; hi < g.n; hi += 5) {
                const double lhs = sobolev_norm(df.eval(lo, hi), theta - theta1);
                const double rhs =
                    (a_norm + b_norm) * std::pow(g.time(hi) - g.time(lo), theta1);
                CHECK(lhs <= rhs * (1.0 + 1e-10));
            }
    }
}
