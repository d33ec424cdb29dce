// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
// Desk scale: n <= 1024 time nodes, K <= 128 modes, d <= 2, <= 32 seeds.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "drough/experiment.hpp"
#include "drough/rng.hpp"
#include "drough/solver.hpp"

using namespace drough;

namespace {

int failures = 0;

void report(int num, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d %-22s %s\n", pass ? "PASS" : "FAIL", num, name, detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(x.size());
    my /= double(x.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

SpectralVector modes_012() {
    SpectralVector v(2);
    v.at(0) = 1.0;
    v.at(1) = {0.3, 0.1};
    v.at(-1) = {0.3, -0.1};
    v.at(2) = {0.1, 0.0};
    v.at(-2) = {0.1, 0.0};
    return v;
}

NonlinearitySpec decay_drift() { return NonlinearitySpec::affine({-1.0}, {0.0}, 0.5); }

// ---- criterion 1: Chen exactness and split invariance ----------------------

void criterion_chen() {
    struct Case {
        std::string name;
        DelayedRoughDriver drv;
    };
    std::vector<Case> cases;
    {
        const Grid g = Grid::over_ir(1.0 / 128.0, 32, 128);
        for (double h : {0.35, 0.4, 0.45, 0.5})
            cases.push_back({"fbm H=" + fmt(h), sample_fbm(101, h, g, 2, 8)});
    }
    {
        const Grid g = Grid::over_ir(1.0 / 256.0, 64, 256);
        auto strat = sample_bm(202, g, 2, 8);
        cases.push_back({"bm_ito", enhance_brownian_ito(strat)});
        cases.push_back({"bm_stratonovich", std::move(strat)});
    }
    {
        const Grid g = Grid::over_ir(1.0 / 128.0, 32, 128);
        cases.push_back({"deterministic",
                         enhance_deterministic(
                             [](double t) {
                                 return std::vector<double>{std::sin(3.0 * t), t * t};
                             },
                             g, 2, 16)});
    }

    bool pass = true;
    double worst_rel = 0.0, worst_split = 0.0;
    std::string offender;
    GaussianStream gs(5);
    for (const auto& c : cases) {
        const double scale = 1.0 + std::pow(c.drv.max_abs_path(), 2.0);
        const auto [c1, c2] = chen_residual(c.drv);
        if (c1 > 1e-12 * scale || c2 > 1e-12 * scale) {
            pass = false;
            offender = c.name;
        }
        worst_rel = std::max(worst_rel, std::max(c1, c2) / scale);

        const std::int64_t n = c.drv.grid.n;
        for (int trial = 0; trial < 200; ++trial) {
            const std::int64_t lo = std::int64_t(gs.uniform01() * double(n - 3));
            const std::int64_t hi = lo + 2 + std::int64_t(gs.uniform01() * double(n - lo - 3));
            const std::int64_t mid = lo + 1 + std::int64_t(gs.uniform01() * double(hi - lo - 1));
            AreaMatrix whole = reconstruct_area(c.drv, lo, hi, false);
            AreaMatrix split = reconstruct_area(c.drv, lo, mid, false);
            split += reconstruct_area(c.drv, mid, hi, false);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    split.at(i, j) += c.drv.increment(lo, mid, i) * c.drv.increment(mid, hi, j);
            whole -= split;
            worst_split = std::max(worst_split, whole.frobenius());
        }
        if (worst_split > 1e-13) {
            pass = false;
            offender = c.name + " (split)";
        }
    }
    report(1, "chen-exactness", pass,
           "max relative residual " + fmt(worst_rel) + ", max split defect " + fmt(worst_split) +
               (pass ? "" : " at " + offender));
}

// ---- criterion 2: smooth-path bracket oracle -------------------------------

void criterion_smooth_oracle() {
    const Grid g = Grid::over_ir(1.0 / 512.0, 0, 512);
    auto drv = std::make_shared<DelayedRoughDriver>(enhance_deterministic(
        [](double t) { return std::vector<double>{std::sin(t)}; }, g, 1, 16));
    DelayedControlledPath p;
    p.grid = g;
    p.theta = 0.0;
    p.d = 1;
    p.driver = drv;
    for (std::int64_t t = 0; t < g.n; ++t) {
        p.y.push_back(SpectralVector::single_mode(0, drv->x(t, 0), 0));
        p.y_prime.push_back({SpectralVector::single_mode(0, 1.0, 0)});
    }
    const auto series = convolution_series(*drv, DelayedControlledVector{{p}}, SemigroupSpec{0.0});
    double worst = 0.0;
    for (std::int64_t t = 0; t < g.n; ++t) {
        const double x = std::sin(g.time(t));
        worst = std::max(worst,
                         std::abs(series[std::size_t(t)].at(0).real() - x * x / 2.0));
    }
    report(2, "smooth-path-oracle", worst < 1e-6, "max error " + fmt(worst) + " (tol 1e-6)");
}

// ---- criterion 3: sewing expansion rate -------------------------------------

void criterion_sewing_rate() {
    const double alpha = 0.45, hurst = 0.45;
    const Grid g = Grid::over_ir(1.0 / 256.0, 64, 256);
    FbmSampler sampler(hurst, g.dt / 4.0, g.i0 * 4, (g.n - 1) * 4 + 1);
    SpectralVector dir(3), bdir(3);
    for (int k = 0; k <= 3; ++k) {
        dir.at(k) = 1.0 / (1.0 + double(k * k));
        bdir.at(k) = 0.4 / (1.0 + double(k * k));
        if (k) {
            dir.at(-k) = dir.at(k);
            bdir.at(-k) = bdir.at(k);
        }
    }
    bool pass = true;
    std::string detail;
    for (double beta : {0.0, alpha, 2.0 * alpha}) {
        double acc = 0.0;
        int cnt = 0;
        for (int seed = 0; seed < 8; ++seed) {
            const auto fine = sampler.sample_path(300 + seed, 1);
            auto drv = std::make_shared<DelayedRoughDriver>(enhance_from_fine_path(
                fine, g, 1, 4, DriverFlavor::fbm_symmetric, 300 + seed, hurst));
            const Grid sol = g.subgrid(64, g.n - 64);
            DelayedControlledPath p;
            p.grid = sol;
            p.theta = 0.8;
            p.d = 1;
            p.driver = drv;
            for (std::int64_t t = 0; t < sol.n; ++t) {
                SpectralVector v = SpectralVector::zero(3);
                v.axpy(drv->x(64 + t, 0), dir);
                v.axpy(drv->x(t, 0), bdir);  // lagged coordinate
                p.y.push_back(v);
                p.y_prime.push_back({dir});
                p.ybar_prime.push_back({bdir});
            }
            const auto fit = local_expansion_error(*drv, DelayedControlledVector{{p}},
                                                   SemigroupSpec{1.0}, alpha, beta, 18,
                                                   17 + seed);
            if (!fit.exact) {
                acc += fit.slope;
                ++cnt;
            }
        }
        const double avg = acc / double(cnt);
        const double need = 3.0 * alpha - beta - 0.15;
        if (avg < need) pass = false;
        detail += "beta=" + fmt(beta) + ": " + fmt(avg) + ">=" + fmt(need) + "  ";
    }
    report(3, "sewing-rate", pass, detail);
}

// ---- criterion 4: ODE oracle -------------------------------------------------

void criterion_ode() {
    const Grid g = Grid::over_ir(1.0 / 512.0, 128, 512);
    auto drv = std::make_shared<DelayedRoughDriver>(enhance_deterministic(
        [](double t) { return std::vector<double>{t}; }, g, 1, 2));
    const auto one = SpectralVector::single_mode(0, 1.0, 0);
    const auto phi = make_history_constant(one, g.subgrid(0, 129), drv, 0.0);
    const auto model = ModelSpec::make(SemigroupSpec{0.0}, decay_drift(),
                                       NonlinearitySpec::zero_map(1), 0.25, 1.0, 0.0, 0.45,
                                       0.42, 0.42, 0.42);
    const auto rep = solve(model, drv, phi);
    double worst = 0.0;
    for (std::int64_t t = 0; t < rep.solution.grid.n; ++t)
        worst = std::max(worst, std::abs(rep.solution.y[std::size_t(t)].at(0).real() -
                                         std::exp(-rep.solution.grid.time(t))));
    report(4, "ode-oracle", worst < 1e-5, "max |y - e^{-t}| = " + fmt(worst) + " (tol 1e-5)");
}

// ---- criterion 5: method-of-steps oracle ------------------------------------

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

void criterion_steps() {
    const Grid g = Grid::over_ir(1.0 / 512.0, 128, 512);
    auto drv = std::make_shared<DelayedRoughDriver>(enhance_deterministic(
        [](double t) { return std::vector<double>{t}; }, g, 1, 8));
    const auto one = SpectralVector::single_mode(0, 1.0, 0);
    const auto phi = make_history_constant(one, g.subgrid(0, 129), drv, 0.0);
    auto f = NonlinearitySpec::zero_map(1);
    f.sigma = 0.5;
    const auto model = ModelSpec::make(SemigroupSpec{0.0}, f,
                                       NonlinearitySpec::affine({0.0}, {1.0}, 0.0), 0.25, 1.0,
                                       0.0, 0.45, 0.42, 0.42, 0.42);
    const auto rep = solve(model, drv, phi);
    double worst = 0.0;
    for (std::int64_t t = 0; t < rep.solution.grid.n; ++t) {
        const double tt = rep.solution.grid.time(t);
        if (tt > 0.75 + 1e-12) break;
        worst = std::max(worst, std::abs(rep.solution.y[std::size_t(t)].at(0).real() -
                                         steps_oracle(tt, 0.25)));
    }
    report(5, "method-of-steps", worst < 1e-5,
           "max error on [0, 3r] = " + fmt(worst) + " (tol 1e-5)");
}

// ---- criterion 6: self convergence -------------------------------------------

void criterion_self_convergence() {
    const double T = 0.5, hurst = 0.45;
    const std::int64_t fine_cells = 2048, hist_fine = 512;
    FbmSampler sampler(hurst, T / double(fine_cells), -hist_fine, fine_cells + hist_fine + 1);
    const auto F = decay_drift();
    const auto G = NonlinearitySpec::frac_laplacian({0.5}, {0.5}, 0.27);  // sigma2 = 0.6 alpha
    const auto phi0 = modes_012();

    std::vector<double> ratios;
    for (int seed = 1; seed <= 9; ++seed) {
        const auto fine = sampler.sample_path(100 * seed, 1);
        std::vector<std::vector<SpectralVector>> sols;
        for (std::int64_t n : {128, 256, 512}) {
            const Grid g = Grid::over_ir(T / double(n), n / 4, n);
            auto drv = std::make_shared<DelayedRoughDriver>(enhance_from_fine_path(
                fine, g, 1, fine_cells / n, DriverFlavor::fbm_symmetric, 100 * seed, hurst));
            const auto phi = make_history_constant(phi0, g.subgrid(0, n / 4 + 1), drv, 1.0);
            const auto model = ModelSpec::make(SemigroupSpec{1.0}, F, G, T / 4.0, T, 1.0, 0.45,
                                               0.42, 0.42, 0.42);
            const auto rep = solve(model, drv, phi);
            std::vector<SpectralVector> at_common;
            const std::int64_t stride = n / 128;
            for (std::int64_t k = 0; k <= 128; ++k)
                at_common.push_back(rep.solution.y[std::size_t(k * stride)]);
            sols.push_back(std::move(at_common));
        }
        auto supdist = [](const auto& a, const auto& b) {
            double worst = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i)
                worst = std::max(worst, sobolev_norm(a[i] - b[i], 1.0));
            return worst;
        };
        ratios.push_back(supdist(sols[0], sols[1]) / supdist(sols[1], sols[2]));
    }
    const double med = median(ratios);
    report(6, "self-convergence", med >= 1.5,
           "median contraction factor per doubling " + fmt(med) + " over 9 seeds (need 1.5)");
}

// ---- criterion 7: area gap decay ---------------------------------------------

void criterion_area_gap() {
    // the r -> 0 limit statement holds for every a_tilde in (0, alpha) and its
    // norm lives on the fixed interval [0, T]; measured at a_tilde = 0.1 where
    // the sqrt(r)-scaling large-span term dominates the discrete statistic
    const double dt = 1.0 / 320.0;
    const std::int64_t sub = 8, m_max = 64, cells = 320;
    const double dtf = dt / double(sub);
    const std::int64_t nf = (m_max + cells) * sub + 1;
    const std::vector<std::int64_t> r_list = {64, 32, 16, 8};

    std::vector<double> medians;
    for (std::int64_t m : r_list) {
        std::vector<double> gaps;
        for (int seed = 0; seed < 32; ++seed) {
            const auto fine =
                sample_brownian_fine_path(1000 + seed, 1, dtf, -m_max * sub, nf);
            const Grid g = Grid::over_ir(dt, m, cells);
            const std::int64_t skip = (m_max - m) * sub;
            std::vector<double> slice(fine.begin() + skip,
                                      fine.begin() + skip + (g.n - 1) * sub + 1);
            const auto drv = enhance_brownian_ito(enhance_from_fine_path(
                slice, g, 1, sub, DriverFlavor::bm_stratonovich, 1000 + seed, 0.5));
            gaps.push_back(delayed_area_gap_norm(drv, 0.1));
        }
        medians.push_back(median(gaps));
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < medians.size(); ++i)
        if (medians[i] >= medians[i - 1]) decreasing = false;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < medians.size(); ++i) {
        lx.push_back(std::log(double(r_list[i]) * dt));
        ly.push_back(std::log(medians[i]));
    }
    const double slope = fit_slope(lx, ly);
    std::string vals;
    for (double m : medians) vals += fmt(m) + " ";
    report(7, "area-gap-decay", decreasing && slope > 0.0,
           "medians over 32 seeds: " + vals + "(strictly decreasing), slope " + fmt(slope));
}

// ---- criterion 8: delay convergence -------------------------------------------

void criterion_delay_convergence() {
    bool pass = true;
    std::string detail;
    {  // Brownian SPDE pair: heat semigroup + fractional-laplacian noise read
       // at the delayed time vs the undelayed equation, shared driver per seed
        DelayConvergenceSetup setup;
        setup.semigroup = SemigroupSpec{1.0};
        setup.drift = decay_drift();
        setup.noise = NonlinearitySpec::frac_laplacian({0.0}, {0.5}, 0.27);
        setup.T = 1.0;
        setup.theta = 1.0;
        setup.alpha = 0.45;
        setup.alpha_tilde = 0.42;
        setup.alpha_bar = 0.42;
        setup.alpha_hat = 0.42;
        setup.dt = 1.0 / 320.0;
        setup.r_steps = {64, 32, 16, 8};
        for (std::uint64_t s = 1; s <= 16; ++s) setup.seeds.push_back(s);
        setup.flavor = DriverFlavor::bm_ito;
        setup.d = 1;
        setup.subgrid = 8;
        setup.phi_value = modes_012();
        setup.threads = 2;
        const auto table = delay_convergence_experiment(setup);
        int inversions = 0;
        for (std::size_t i = 1; i < table.rows.size(); ++i) {
            if (table.rows[i].median_rho > table.rows[i - 1].median_rho) {
                ++inversions;
                if (table.rows[i].median_rho > 1.10 * table.rows[i - 1].median_rho) pass = false;
            }
        }
        if (inversions > 1) pass = false;
        for (const auto& row : table.rows)
            if (row.failures > 0) pass = false;
        detail += "brownian medians: ";
        for (const auto& row : table.rows) detail += fmt(row.median_rho) + " ";
        detail += "(h: ";
        for (const auto& row : table.rows) detail += fmt(row.median_h) + " ";
        detail += "); ";
    }
    {  // smooth linear model against the undelayed ODE, compatible linear history
        DelayConvergenceSetup setup;
        setup.semigroup = SemigroupSpec{0.0};
        auto f = NonlinearitySpec::zero_map(1);
        f.sigma = 0.5;
        setup.drift = f;
        setup.noise = NonlinearitySpec::affine({0.0}, {1.0}, 0.0);
        setup.T = 1.0;
        setup.theta = 0.0;
        setup.alpha = 0.45;
        setup.alpha_tilde = 0.42;
        setup.alpha_bar = 0.42;
        setup.alpha_hat = 0.42;
        setup.dt = 1.0 / 320.0;
        setup.r_steps = {64, 32, 16, 8};
        setup.seeds = {1};
        setup.flavor = DriverFlavor::deterministic;
        setup.d = 1;
        setup.subgrid = 8;
        setup.phi_value = SpectralVector::single_mode(0, 1.0, 0);
        setup.phi_directions = {SpectralVector::single_mode(0, 1.0, 0)};
        setup.deterministic_path = [](double t) { return std::vector<double>{t}; };
        const auto table = delay_convergence_experiment(setup);
        if (table.fitted_slope < 0.9) pass = false;
        detail += "smooth slope " + fmt(table.fitted_slope) + " (need 0.9)";
    }
    report(8, "delay-convergence", pass, detail);
}

// ---- criterion 9: stability response -------------------------------------------

void criterion_stability() {
    bool pass = true;
    std::string detail;
    for (auto kind : {StabilitySetup::Kind::initial_data, StabilitySetup::Kind::driver}) {
        StabilitySetup setup;
        const auto G = NonlinearitySpec::frac_laplacian({0.4}, {0.4}, 0.27);
        setup.model = ModelSpec::make(SemigroupSpec{1.0}, decay_drift(), G, 0.125, 0.5, 1.0,
                                      0.45, 0.42, 0.42, 0.42);
        setup.dt = 0.5 / 128.0;
        setup.r_steps = 32;
        setup.seed = 7;
        setup.flavor = DriverFlavor::bm_stratonovich;
        setup.d = 1;
        setup.subgrid = 8;
        setup.phi_value = modes_012();
        setup.kind = kind;
        SpectralVector dir(1);
        dir.at(0) = 1.0;
        dir.at(1) = {0.5, 0.0};
        dir.at(-1) = {0.5, 0.0};
        setup.direction = dir;
        setup.path_bump = [](double t, int c) { return std::sin(double(c + 1) * 6.0 * t); };
        setup.magnitudes = {1e-4, 1e-3, 1e-2};
        const auto rows = stability_experiment(setup);
        const double c_fit = rows[0].rho / rows[0].u;
        double worst_lo = 1.0, worst_hi = 1.0;
        for (const auto& row : rows) {
            const double q = row.rho / (c_fit * row.u);
            worst_lo = std::min(worst_lo, q);
            worst_hi = std::max(worst_hi, q);
        }
        if (worst_lo < 1.0 / 3.0 || worst_hi > 3.0) pass = false;
        detail += std::string(kind == StabilitySetup::Kind::driver ? "driver" : "initial") +
                  ": C=" + fmt(c_fit) + " span [" + fmt(worst_lo) + "," + fmt(worst_hi) + "]  ";
    }
    report(9, "stability-response", pass, detail + "(factor-3 bands)");
}

// ---- criterion 10: structural identities ----------------------------------------

void criterion_structural() {
    bool pass = true;
    std::string detail;
    {  // zeta' == y, identically
        const Grid g = Grid::over_ir(1.0 / 64.0, 16, 64);
        auto drv = std::make_shared<DelayedRoughDriver>(sample_fbm(31, 0.45, g, 1, 4));
        const Grid sol = g.subgrid(16, 49);
        GaussianStream gs(9);
        DelayedControlledPath p;
        p.grid = sol;
        p.theta = 0.8;
        p.d = 1;
        p.driver = drv;
        for (std::int64_t t = 0; t < sol.n; ++t) {
            SpectralVector v(2);
            v.at(0) = gs.next();
            v.at(1) = {gs.next(), gs.next()};
            v.at(-1) = std::conj(v.at(1));
            p.y.push_back(v);
            p.y_prime.push_back({SpectralVector::single_mode(0, gs.next(), 0)});
            p.ybar_prime.push_back({SpectralVector::single_mode(0, gs.next(), 0)});
        }
        const auto rep = convolution_as_controlled(*drv, DelayedControlledVector{{p}},
                                                   SemigroupSpec{1.0}, 0.45, 0.42, 0.3);
        bool same = true;
        for (std::int64_t t = 0; t < sol.n; ++t)
            same = same && rep.zeta.yp(t, 0).bitwise_equal(p.y[std::size_t(t)]);
        if (!same) pass = false;
        detail += std::string("zeta'=y ") + (same ? "bitwise; " : "BROKEN; ");
    }
    {  // y' = G(y, y_delay) on an accepted solution
        const Grid g = Grid::over_ir(1.0 / 128.0, 32, 96);  // r = 1/4, T = 3/4
        auto drv = std::make_shared<DelayedRoughDriver>(sample_bm(17, g, 1, 4));
        const auto G = NonlinearitySpec::frac_laplacian({0.3}, {0.3}, 0.27);
        const auto model = ModelSpec::make(SemigroupSpec{1.0}, decay_drift(), G, 0.25, 0.75,
                                           1.0, 0.45, 0.42, 0.42, 0.42);
        const auto phi = make_history_constant(modes_012(), g.subgrid(0, 33), drv, 1.0);
        const auto rep = solve(model, drv, phi);
        double worst = 0.0;
        for (std::int64_t t = 0; t < rep.solution.grid.n; ++t) {
            const std::int64_t abs = rep.solution.grid.abs_index(t) - 32;
            const SpectralVector& z = abs < 0 ? phi.y[std::size_t(abs + 32)]
                                              : rep.solution.y[std::size_t(abs)];
            const auto want = eval_G(G, rep.solution.y[std::size_t(t)], z)[0];
            worst = std::max(worst, sobolev_norm(rep.solution.yp(t, 0) - want, 1.0));
        }
        if (worst > 1e-10) pass = false;
        detail += "self-derivative defect " + fmt(worst) + "; ";
    }
    {  // r = 0 specialization, bitwise
        const Grid g0 = Grid::over_ir(1.0 / 64.0, 0, 64);
        const auto drv = std::make_shared<DelayedRoughDriver>(sample_bm(23, g0, 1, 4));
        bool same = drv->cell_delayed_area == drv->cell_area;

        GaussianStream gs(11);
        DelayedControlledPath delayed;
        delayed.grid = g0;
        delayed.theta = 0.5;
        delayed.d = 1;
        delayed.driver = drv;
        const SpectralVector dir = SpectralVector::single_mode(1, {0.4, 0.2}, 2);
        for (std::int64_t t = 0; t < g0.n; ++t) {
            SpectralVector v(2);
            v.at(0) = gs.next();
            v.at(1) = {0.2 * gs.next(), 0.0};
            delayed.y.push_back(v);
            delayed.y_prime.push_back({dir});
            delayed.ybar_prime.push_back({SpectralVector::zero(2)});
        }
        DelayedControlledPath plain = delayed;
        plain.ybar_prime.clear();
        for (std::int64_t lo = 0; lo < g0.n - 1 && same; lo += 5)
            for (std::int64_t hi = lo + 1; hi < g0.n && same; hi += 7)
                same = delayed.remainder_at(lo, hi).bitwise_equal(plain.remainder_at(lo, hi));

        const auto sa =
            convolution_series(*drv, DelayedControlledVector{{delayed}}, SemigroupSpec{1.0});
        const auto sb =
            convolution_series(*drv, DelayedControlledVector{{plain}}, SemigroupSpec{1.0});
        for (std::size_t i = 0; i < sa.size() && same; ++i) same = sa[i].bitwise_equal(sb[i]);
        if (!same) pass = false;
        detail += std::string("r=0 specialization ") + (same ? "bitwise" : "BROKEN");
    }
    report(10, "structural-identities", pass, detail);
}

}  // namespace

int main() {
    std::printf("drough acceptance suite\n");
    criterion_chen();
    criterion_smooth_oracle();
    criterion_sewing_rate();
    criterion_ode();
    criterion_steps();
    criterion_self_convergence();
    criterion_area_gap();
    criterion_delay_convergence();
    criterion_stability();
    criterion_structural();
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
