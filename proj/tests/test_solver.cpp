#include <cmath>
#include <memory>

#include "doctest.h"
#include "drough/experiment.hpp"
#include "drough/rng.hpp"
#include "drough/solver.hpp"

using namespace drough;

namespace {

std::shared_ptr<const DelayedRoughDriver> linear_driver(const Grid& g, std::int64_t sub = 4) {
    return std::make_shared<DelayedRoughDriver>(enhance_deterministic(
        [](double t) { return std::vector<double>{t}; }, g, 1, sub));
}

NonlinearitySpec zero_drift() {
    auto f = NonlinearitySpec::zero_map(1);
    f.sigma = 0.5;
    return f;
}

NonlinearitySpec decay_drift() {  // F(y, z) = -y
    return NonlinearitySpec::affine({-1.0}, {0.0}, 0.5);
}

// phi == value on [-r, 0]
DelayedControlledPath constant_history(std::shared_ptr<const DelayedRoughDriver> drv,
                                       const SpectralVector& value, double theta) {
    const Grid hist = drv->grid.subgrid(0, drv->grid.delay_steps + 1);
    return make_history_constant(value, hist, std::move(drv), theta);
}

// closed form of dy = y_{t-r} dt, phi == 1: sum_j (t - (j-1) r)^j / j!
double steps_oracle(double t, double r) {
    double acc = 0.0;
    for (int j = 0;; ++j) {
        const double base = t - double(j - 1) * r;
        if (base < 0.0) break;
        double term = 1.0;
        for (int i = 1; i <= j; ++i) term *= base / double(i);
        acc += term;
    }
    return acc;
}

}  // namespace

TEST_CASE("drift integral closed forms") {
    const Grid g = Grid::over_ir(1.0 / 64.0, 0, 64);
    const auto c = SpectralVector::single_mode(2, 1.0, 2);
    const std::vector<SpectralVector> y(static_cast<std::size_t>(g.n), c);

    SUBCASE("constant F with A = 0 integrates to c t, exactly") {
        const auto F = NonlinearitySpec::affine({1.0}, {0.0}, 0.5);
        const auto series = drift_series(y, y, F, SemigroupSpec{0.0}, g);
        for (std::int64_t t = 0; t < g.n; t += 9)
            CHECK(std::abs(series[std::size_t(t)].at(2) -
                           SpectralVector::cplx(g.time(t), 0.0)) <= 1e-14);
    }
    SUBCASE("constant F under the heat semigroup hits the multiplier formula") {
        const auto F = NonlinearitySpec::affine({1.0}, {0.0}, 0.5);
        const auto series = drift_series(y, y, F, SemigroupSpec{1.0}, g);
        const double k2 = 4.0;
        for (std::int64_t t = 1; t < g.n; t += 13) {
            const double want = (1.0 - std::exp(-k2 * g.time(t))) / k2;
            CHECK(series[std::size_t(t)].at(2).real() ==
                  doctest::Approx(want).epsilon(1e-13));
        }
    }
    SUBCASE("drift_integral is the series at the node") {
        const auto F = NonlinearitySpec::affine({0.3}, {0.3}, 0.5);
        const auto series = drift_series(y, y, F, SemigroupSpec{1.0}, g);
        const auto one = drift_integral(y, y, F, SemigroupSpec{1.0}, g, 40);
        CHECK(sobolev_norm(one - series[40], 0.0) == 0.0);
    }
}

TEST_CASE("picard_step degenerate cases") {
    const Grid g = Grid::over_ir(1.0 / 64.0, 16, 64);
    auto drv = linear_driver(g);
    const auto y0 = SpectralVector::single_mode(1, 1.0, 4);
    const auto phi = constant_history(drv, y0, 0.5);

    SUBCASE("F = 0, G = 0 lands on the semigroup flow in one iteration") {
        const auto model = ModelSpec::make(SemigroupSpec{1.0}, zero_drift(),
                                           NonlinearitySpec::zero_map(1), 0.25, 1.0, 0.5, 0.45,
                                           0.42, 0.42, 0.42);
        const auto res = picard_step(model, drv, phi, y0, 16, 16, 10);
        CHECK(res.status == StepStatus::converged);
        CHECK(res.iterations == 1);
        for (std::int64_t t = 0; t <= 16; ++t) {
            const auto want = apply_semigroup(model.semigroup, y0, double(t) * g.dt);
            CHECK(sobolev_norm(res.segment.y[std::size_t(t)] - want, 0.5) <= 1e-14);
        }
    }
    SUBCASE("step beyond the delay is rejected") {
        const auto model = ModelSpec::make(SemigroupSpec{1.0}, zero_drift(),
                                           NonlinearitySpec::zero_map(1), 0.25, 1.0, 0.5, 0.45,
                                           0.42, 0.42, 0.42);
        CHECK_THROWS(picard_step(model, drv, phi, y0, 16, 17, 10));
    }
    SUBCASE("contraction ratio shrinks as the step halves") {
        const auto model = ModelSpec::make(SemigroupSpec{0.0}, decay_drift(),
                                           NonlinearitySpec::zero_map(1), 0.25, 1.0, 0.0, 0.45,
                                           0.42, 0.42, 0.42);
        double prev = 1e300;
        for (std::int64_t step : {16, 8, 4, 2}) {
            const auto res = picard_step(model, drv, phi, y0, 16, step, 30);
            CHECK(res.status == StepStatus::converged);
            CHECK(res.ratio < prev);
            prev = res.ratio;
        }
    }
}

TEST_CASE("ODE oracle: G = 0, F = -y, A = 0 gives e^{-t}") {
    const Grid g = Grid::over_ir(1.0 / 256.0, 64, 256);
    auto drv = linear_driver(g, 2);
    const auto one = SpectralVector::single_mode(0, 1.0, 0);
    const auto phi = constant_history(drv, one, 0.0);
    const auto model = ModelSpec::make(SemigroupSpec{0.0}, decay_drift(),
                                       NonlinearitySpec::zero_map(1), 0.25, 1.0, 0.0, 0.45,
                                       0.42, 0.42, 0.42);
    const auto rep = solve(model, drv, phi);
    double worst = 0.0;
    for (std::int64_t t = 0; t < rep.solution.grid.n; ++t)
        worst = std::max(worst, std::abs(rep.solution.y[std::size_t(t)].at(0).real() -
                                         std::exp(-rep.solution.grid.time(t))));
    CHECK(worst < 1e-5);
    CHECK(fixed_point_residual(model, rep) <= 1e-8);
}

TEST_CASE("method of steps: dy = y_{t-r} dX with X = t") {
    const Grid g = Grid::over_ir(1.0 / 512.0, 128, 512);  // r = 1/4, T = 1
    auto drv = linear_driver(g, 8);
    const auto one = SpectralVector::single_mode(0, 1.0, 0);
    const auto phi = constant_history(drv, one, 0.0);
    const auto G = NonlinearitySpec::affine({0.0}, {1.0}, 0.0);
    const auto model =
        ModelSpec::make(SemigroupSpec{0.0}, zero_drift(), G, 0.25, 1.0, 0.0, 0.45, 0.42,
                        0.42, 0.42);
    const auto rep = solve(model, drv, phi);
    double worst = 0.0;
    for (std::int64_t t = 0; t < rep.solution.grid.n; ++t) {
        const double tt = rep.solution.grid.time(t);
        if (tt > 0.75 + 1e-12) break;  // compare on [0, 3r]
        worst = std::max(worst, std::abs(rep.solution.y[std::size_t(t)].at(0).real() -
                                         steps_oracle(tt, 0.25)));
    }
    CHECK(worst < 1e-5);

    SUBCASE("self-derivative identity y' = G(y, y_delay) holds at the nodes") {
        const auto& sol = rep.solution;
        double worst_id = 0.0;
        for (std::int64_t t = 0; t < sol.grid.n; ++t) {
            // delayed argument reads phi on [0, r], the solution past r
            const double tt = sol.grid.time(t);
            const double delayed = tt < 0.25 ? 1.0 : steps_oracle(tt - 0.25, 0.25);
            (void)delayed;
            const std::int64_t abs = sol.grid.abs_index(t) - 128;
            const SpectralVector& z =
                abs < 0 ? phi.y[std::size_t(abs + 128)] : sol.y[std::size_t(abs)];
            const auto want = eval_G(G, sol.y[std::size_t(t)], z)[0];
            worst_id = std::max(worst_id, sobolev_norm(sol.yp(t, 0) - want, 0.0));
        }
        CHECK(worst_id <= 1e-10);
    }
}

TEST_CASE("spde solve: consistency, determinism, regularity report") {
    const Grid g = Grid::over_ir(1.0 / 128.0, 32, 128);
    auto drv = std::make_shared<DelayedRoughDriver>(sample_fbm(3, 0.45, g, 1, 4));
    GaussianStream gs(1);
    SpectralVector y0(4);
    y0.at(0) = 1.0;
    y0.at(1) = {0.3, 0.1};
    y0.at(-1) = std::conj(y0.at(1));
    const auto phi = constant_history(drv, y0, 1.0);
    const auto G = NonlinearitySpec::frac_laplacian({0.3}, {0.3}, 0.27);
    const auto model = ModelSpec::make(SemigroupSpec{1.0}, decay_drift(), G, 0.25, 1.0, 1.0,
                                       0.45, 0.42, 0.42, 0.42);

    const auto rep = solve(model, drv, phi);
    CHECK(rep.envelope_ok);
    for (const auto& s : rep.steps) CHECK(s.ratio < 1.0);

    SUBCASE("macro-step partition does not change the fixed point") {
        SolveOptions coarse;
        coarse.max_step_nodes = 16;
        SolveOptions fine;
        fine.max_step_nodes = 8;
        const auto a = solve(model, drv, phi, coarse);
        const auto b = solve(model, drv, phi, fine);
        double worst = 0.0;
        for (std::int64_t t = 0; t < a.solution.grid.n; ++t)
            worst = std::max(worst, sobolev_norm(a.solution.y[std::size_t(t)] -
                                                 b.solution.y[std::size_t(t)], 1.0));
        CHECK(worst <= 1e-9);
    }
    SUBCASE("bitwise determinism") {
        const auto again = solve(model, drv, phi);
        REQUIRE(again.solution.y.size() == rep.solution.y.size());
        for (std::size_t i = 0; i < rep.solution.y.size(); ++i)
            CHECK(again.solution.y[i].bitwise_equal(rep.solution.y[i]));
    }
    SUBCASE("fixed-point residual") {
        CHECK(fixed_point_residual(model, rep) <= 1e-8);
    }
    SUBCASE("regularity upgrade: the alpha-exponent report stays finite") {
        const auto full = controlled_norm(rep.solution, model.alpha, model.theta);
        CHECK(std::isfinite(full.holder_R_2alpha));
        CHECK(full.holder_R_2alpha > 0.0);
        MESSAGE("solution ||R||_{2 alpha} = ", full.holder_R_2alpha);
    }
    SUBCASE("solution distance to itself is zero") {
        const auto dist = solution_distance(rep, rep, model.alpha_hat, model.alpha, model.theta);
        CHECK(dist.rho == 0.0);
        CHECK(dist.u_total == 0.0);
        CHECK(dist.m_bracket > 0.0);
    }
}

TEST_CASE("linear response to an initial-data shift") {
    const Grid g = Grid::over_ir(1.0 / 128.0, 32, 128);
    auto drv = std::make_shared<DelayedRoughDriver>(sample_bm(5, g, 1, 4));
    const auto one = SpectralVector::single_mode(0, 1.0, 0);
    const auto G = NonlinearitySpec::frac_laplacian({0.0}, {0.4}, 0.27);
    const auto model = ModelSpec::make(SemigroupSpec{1.0}, decay_drift(), G, 0.25, 1.0, 1.0,
                                       0.45, 0.42, 0.42, 0.42);
    const auto base = solve(model, drv, constant_history(drv, one, 1.0));

    double prev_ratio = -1.0;
    for (double eps : {1e-3, 1e-2}) {
        SpectralVector shifted = one;
        shifted.at(0) += eps;
        const auto pert = solve(model, drv, constant_history(drv, shifted, 1.0));
        const auto dist = solution_distance(base, pert, model.alpha_hat, model.alpha, model.theta);
        CHECK(dist.u_driver == 0.0);
        const double ratio = dist.rho / dist.u_total;
        CHECK(std::isfinite(ratio));
        if (prev_ratio > 0.0)  // linear regime: the response constant is stable
            CHECK(ratio == doctest::Approx(prev_ratio).epsilon(0.3));
        prev_ratio = ratio;
    }
}

TEST_CASE("delay convergence on the smooth linear model") {
    // dy = y_{t-r} dX vs dz = z dX with X = t: distance decays like r
    DelayConvergenceSetup setup;
    setup.semigroup = SemigroupSpec{0.0};
    setup.drift = zero_drift();
    setup.noise = NonlinearitySpec::affine({0.0}, {1.0}, 0.0);
    setup.T = 1.0;
    setup.theta = 0.0;
    setup.alpha = 0.45;
    setup.alpha_tilde = 0.42;
    setup.alpha_bar = 0.42;
    setup.alpha_hat = 0.42;
    setup.dt = 1.0 / 320.0;
    setup.r_steps = {64, 32, 16};
    setup.seeds = {1};
    setup.flavor = DriverFlavor::deterministic;
    setup.d = 1;
    setup.subgrid = 8;
    setup.phi_value = SpectralVector::single_mode(0, 1.0, 0);
    // slope-1 history: first-order compatible with dz = z dt at t = 0
    setup.phi_directions = {SpectralVector::single_mode(0, 1.0, 0)};
    setup.deterministic_path = [](double t) { return std::vector<double>{t}; };

    const auto table = delay_convergence_experiment(setup);
    REQUIRE(table.rows.size() == 3);
    for (const auto& row : table.rows) CHECK(row.failures == 0);
    CHECK(table.rows[0].median_rho > table.rows[1].median_rho);
    CHECK(table.rows[1].median_rho > table.rows[2].median_rho);
    CHECK(table.fitted_slope >= 0.9);
    // smooth path: both levels coincide, no area gap
    for (const auto& row : table.rows) CHECK(row.median_h <= 1e-10);
}

TEST_CASE("model validation rejects bad exponent configurations") {
    const SemigroupSpec sg{1.0};
    const auto F = decay_drift();
    const auto G = NonlinearitySpec::frac_laplacian({0.3}, {0.3}, 0.27);
    // alpha outside (1/3, 1/2]
    CHECK_THROWS(ModelSpec::make(sg, F, G, 0.25, 1.0, 1.0, 0.6, 0.42, 0.42, 0.42));
    // alpha_tilde below sigma2
    CHECK_THROWS(ModelSpec::make(sg, F, G, 0.25, 1.0, 1.0, 0.45, 0.2, 0.42, 0.42));
    // alpha_hat violating 3 ah - 2 a - s2 > 0
    CHECK_THROWS(ModelSpec::make(sg, F, G, 0.25, 1.0, 1.0, 0.45, 0.42, 0.42, 0.38));
    // sigma1 outside (0, 1)
    auto f_bad = NonlinearitySpec::affine({-1.0}, {0.0}, 0.0);
    CHECK_THROWS(ModelSpec::make(sg, f_bad, G, 0.25, 1.0, 1.0, 0.45, 0.42, 0.42, 0.42));
    // convergence-run constraint on sigma2
    const auto G_small = NonlinearitySpec::frac_laplacian({0.3}, {0.3}, 0.1);
    CHECK_THROWS(
        ModelSpec::make(sg, F, G_small, 0.25, 1.0, 1.0, 0.45, 0.42, 0.42, 0.42, true));
    // derived exponents recorded
    const auto ok = ModelSpec::make(sg, F, G, 0.25, 1.0, 1.0, 0.45, 0.42, 0.42, 0.42);
    CHECK(ok.exps.lambda2 == doctest::Approx(std::min(0.45 - 0.42, 0.42 - 0.27)));
    CHECK(ok.exps.lambda3 == doctest::Approx(std::min({0.45 - 0.27, 1.0 - 0.9, 0.5})));
    CHECK(ok.exps.lambda > 0.0);
    CHECK(ok.exps.nu > 0.0);
}

TEST_CASE("a non-contracting model aborts with the step-underflow diagnostic") {
    // r = 0 so the noise reads the current iterate; a large coefficient keeps
    // the Picard map expansive at every allowed step size
    const Grid g = Grid::over_ir(1.0 / 64.0, 0, 64);
    auto drv = std::make_shared<DelayedRoughDriver>(sample_bm(3, g, 1, 4));
    SpectralVector phi0(1);
    phi0.at(0) = 1.0;
    phi0.at(1) = {0.5, 0.0};
    phi0.at(-1) = {0.5, 0.0};
    const auto phi = make_history_constant(phi0, g.subgrid(0, 1), drv, 1.0);
    const auto G = NonlinearitySpec::affine({500.0}, {0.0}, 0.0);
    const auto model = ModelSpec::make(SemigroupSpec{0.0}, decay_drift(), G, 0.0, 1.0, 1.0,
                                       0.45, 0.42, 0.42, 0.42);
    CHECK_THROWS_WITH_AS(solve(model, drv, phi), doctest::Contains("step underflow"),
                         std::runtime_error);
}

TEST_CASE("solution distance rejects mismatched grids") {
    const auto one = SpectralVector::single_mode(0, 1.0, 0);
    const auto model_of = [&](const Grid& g) {
        return ModelSpec::make(SemigroupSpec{0.0}, decay_drift(),
                               NonlinearitySpec::zero_map(1), g.delay(), g.t_end(), 0.0, 0.45,
                               0.42, 0.42, 0.42);
    };
    const Grid ga = Grid::over_ir(1.0 / 32.0, 8, 32);
    const Grid gb = Grid::over_ir(1.0 / 16.0, 4, 16);
    auto da = linear_driver(ga, 2);
    auto db = linear_driver(gb, 2);
    const auto ra = solve(model_of(ga), da, constant_history(da, one, 0.0));
    const auto rb = solve(model_of(gb), db, constant_history(db, one, 0.0));
    CHECK_THROWS(solution_distance(ra, rb, 0.42, 0.45, 0.0));
}

TEST_CASE("geometric brownian closed forms distinguish the two calculi") {
    // dy = lam y . dW: the Stratonovich lift gives y0 e^{lam dW}, the Ito lift
    // gives y0 e^{lam W - lam^2 t / 2}; both are end-to-end solver oracles on a
    // genuinely rough driver
    const std::int64_t n = 512;
    const Grid g = Grid::over_ir(1.0 / double(n), 0, n);
    auto strat = std::make_shared<DelayedRoughDriver>(sample_bm(11, g, 1, 8));
    auto ito = std::make_shared<DelayedRoughDriver>(enhance_brownian_ito(*strat));
    SpectralVector one(0);
    one.at(0) = 1.0;
    const double lam = 0.5;
    const auto model = ModelSpec::make(SemigroupSpec{0.0}, zero_drift(),
                                       NonlinearitySpec::affine({lam}, {0.0}, 0.0), 0.0, 1.0,
                                       0.0, 0.45, 0.42, 0.42, 0.42);
    for (bool use_ito : {false, true}) {
        auto drv = use_ito ? ito : strat;
        const auto phi = make_history_constant(one, drv->grid.subgrid(0, 1), drv, 0.0);
        const auto rep = solve(model, drv, phi);
        double worst = 0.0, worst_wrong = 0.0;
        for (std::int64_t t = 0; t < rep.solution.grid.n; ++t) {
            const double w = drv->x(t, 0);
            const double tt = rep.solution.grid.time(t);
            const double got = rep.solution.y[std::size_t(t)].at(0).real();
            const double strat_form = std::exp(lam * w);
            const double ito_form = std::exp(lam * w - 0.5 * lam * lam * tt);
            worst = std::max(worst, std::abs(got - (use_ito ? ito_form : strat_form)));
            worst_wrong =
                std::max(worst_wrong, std::abs(got - (use_ito ? strat_form : ito_form)));
        }
        CHECK(worst < 5e-4);
        CHECK(worst_wrong > 0.05);  // the other calculus is visibly wrong
    }
}

TEST_CASE("fbm exponential oracle: geometric lift obeys first-order calculus") {
    // dy = lam y . dB with the symmetric (geometric) lift solves to y0 e^{lam dB}
    const std::int64_t fine_cells = 2048;
    FbmSampler sampler(0.45, 1.0 / double(fine_cells), 0, fine_cells + 1);
    SpectralVector one(0);
    one.at(0) = 1.0;
    const double lam = 0.5;
    const auto model =
        ModelSpec::make(SemigroupSpec{0.0}, zero_drift(),
                        NonlinearitySpec::affine({lam}, {0.0}, 0.0), 0.0, 1.0, 0.0, 0.45,
                        0.42, 0.42, 0.42);
    std::vector<double> improvement;
    for (int seed = 1; seed <= 4; ++seed) {
        const auto fine = sampler.sample_path(40 + seed, 1);
        double err_coarse = 0.0, err_fine = 0.0;
        for (std::int64_t n : {128, 512}) {
            const Grid g = Grid::over_ir(1.0 / double(n), 0, n);
            auto drv = std::make_shared<DelayedRoughDriver>(enhance_from_fine_path(
                fine, g, 1, fine_cells / n, DriverFlavor::fbm_symmetric, 40 + seed, 0.45));
            const auto phi = make_history_constant(one, drv->grid.subgrid(0, 1), drv, 0.0);
            const auto rep = solve(model, drv, phi);
            double worst = 0.0;
            for (std::int64_t t = 0; t < rep.solution.grid.n; ++t)
                worst = std::max(worst,
                                 std::abs(rep.solution.y[std::size_t(t)].at(0).real() -
                                          std::exp(lam * drv->x(t, 0))));
            (n == 128 ? err_coarse : err_fine) = worst;
        }
        CHECK(err_fine < 2e-3);
        improvement.push_back(err_coarse / err_fine);
    }
    std::sort(improvement.begin(), improvement.end());
    CHECK(0.5 * (improvement[1] + improvement[2]) > 1.5);  // refinement pays off
}

TEST_CASE("solve with the smooth bounded nonlinearity") {
    const Grid g = Grid::over_ir(1.0 / 64.0, 16, 64);
    auto drv = std::make_shared<DelayedRoughDriver>(sample_bm(29, g, 1, 4));
    SpectralVector phi0(2);
    phi0.at(0) = 0.5;
    phi0.at(1) = {0.3, 0.0};
    phi0.at(-1) = {0.3, 0.0};
    const auto phi = constant_history(drv, phi0, 1.0);
    const auto G = NonlinearitySpec::smooth_bounded({0.6}, {0.6}, 4, 1.0, 0.0);
    const auto model =
        ModelSpec::make(SemigroupSpec{1.0}, decay_drift(), G, 0.25, 1.0, 1.0, 0.45, 0.42,
                        0.42, 0.42);
    const auto rep = solve(model, drv, phi);
    CHECK(fixed_point_residual(model, rep) <= 1e-8);
    const auto again = solve(model, drv, phi);
    for (std::size_t i = 0; i < rep.solution.y.size(); i += 7)
        CHECK(again.solution.y[i].bitwise_equal(rep.solution.y[i]));
}

TEST_CASE("solve with a two-component driver") {
    const Grid g = Grid::over_ir(1.0 / 64.0, 16, 64);
    auto drv = std::make_shared<DelayedRoughDriver>(sample_bm(41, g, 2, 4));
    SpectralVector phi0(2);
    phi0.at(0) = 1.0;
    phi0.at(1) = {0.3, 0.0};
    phi0.at(-1) = {0.3, 0.0};
    const auto phi = constant_history(drv, phi0, 1.0);
    // one component reads the current state, the other the delayed one
    const auto G = NonlinearitySpec::frac_laplacian({0.3, 0.0}, {0.0, 0.3}, 0.27);
    const auto model = ModelSpec::make(SemigroupSpec{1.0}, decay_drift(), G, 0.25, 1.0, 1.0,
                                       0.45, 0.42, 0.42, 0.42);
    const auto rep = solve(model, drv, phi);
    CHECK(rep.solution.d == 2);
    CHECK(fixed_point_residual(model, rep) <= 1e-8);
    for (const auto& s : rep.steps) CHECK(s.ratio < 1.0);
    // both derivative slots are populated node-wise
    double sup0 = 0.0, sup1 = 0.0;
    for (std::int64_t t = 0; t < rep.solution.grid.n; ++t) {
        sup0 = std::max(sup0, sobolev_norm(rep.solution.yp(t, 0), 1.0));
        sup1 = std::max(sup1, sobolev_norm(rep.solution.yp(t, 1), 1.0));
    }
    CHECK(sup0 > 0.0);
    CHECK(sup1 > 0.0);
}

TEST_CASE("experiment fan-out is schedule independent") {
    DelayConvergenceSetup setup;
    setup.semigroup = SemigroupSpec{1.0};
    setup.drift = decay_drift();
    setup.noise = NonlinearitySpec::frac_laplacian({0.0}, {0.4}, 0.27);
    setup.T = 0.5;
    setup.theta = 1.0;
    setup.alpha = 0.45;
    setup.alpha_tilde = 0.42;
    setup.alpha_bar = 0.42;
    setup.alpha_hat = 0.42;
    setup.dt = 0.5 / 64.0;
    setup.r_steps = {16, 8};
    setup.seeds = {3, 4, 5, 6};
    setup.flavor = DriverFlavor::bm_ito;
    setup.d = 1;
    setup.subgrid = 4;
    SpectralVector phi0(1);
    phi0.at(0) = 1.0;
    phi0.at(1) = {0.3, 0.0};
    phi0.at(-1) = {0.3, 0.0};
    setup.phi_value = phi0;

    setup.threads = 1;
    const auto serial = delay_convergence_experiment(setup);
    setup.threads = 3;
    const auto parallel = delay_convergence_experiment(setup);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].median_rho == parallel.rows[i].median_rho);
        CHECK(serial.rows[i].median_h == parallel.rows[i].median_h);
    }
}

TEST_CASE("stability experiment smoke") {
    StabilitySetup setup;
    const auto G = NonlinearitySpec::frac_laplacian({0.2}, {0.2}, 0.27);
    setup.model = ModelSpec::make(SemigroupSpec{1.0}, decay_drift(), G, 0.25, 0.5, 1.0, 0.45,
                                  0.42, 0.42, 0.42);
    setup.dt = 1.0 / 128.0;
    setup.r_steps = 32;
    setup.seed = 2;
    setup.flavor = DriverFlavor::bm_stratonovich;
    setup.d = 1;
    setup.subgrid = 4;
    // needs k != 0 content: the fractional laplacian annihilates the zero mode
    SpectralVector phi0(2);
    phi0.at(0) = 1.0;
    phi0.at(1) = {0.4, 0.0};
    phi0.at(-1) = {0.4, 0.0};
    setup.phi_value = phi0;
    setup.kind = StabilitySetup::Kind::driver;
    setup.path_bump = [](double t, int) { return std::sin(6.0 * t); };
    setup.magnitudes = {1e-4, 1e-3, 1e-2, 1e-1};
    const auto rows = stability_experiment(setup);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].rho > 0.0);
    for (std::size_t i = 1; i < rows.size(); ++i) {  // monotone in the magnitude
        CHECK(rows[i - 1].rho < rows[i].rho);
        CHECK(rows[i - 1].u < rows[i].u);
    }
}
