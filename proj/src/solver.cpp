#include "drough/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace drough {

namespace {

void check_interval(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument("ModelSpec: " + what);
}

// trapezoidal nodal F against the exactly integrated multiplier:
// phi1(x) = (1 - e^{-x}) / x, phi1(0) = 1
double phi1(double x) { return x == 0.0 ? 1.0 : -std::expm1(-x) / x; }

}  // namespace

ModelSpec ModelSpec::make(SemigroupSpec sg, NonlinearitySpec F, NonlinearitySpec G, double r,
                          double T, double theta, double alpha, double alpha_tilde,
                          double alpha_bar, double alpha_hat, bool convergence_run) {
    ModelSpec m;
    m.semigroup = sg;
    m.F = std::move(F);
    m.G = std::move(G);
    m.r = r;
    m.T = T;
    m.theta = theta;
    m.alpha = alpha;
    m.alpha_tilde = alpha_tilde;
    m.alpha_bar = alpha_bar;
    m.alpha_hat = alpha_hat;

    const double s1 = m.sigma1(), s2 = m.sigma2();
    check_interval(alpha > 1.0 / 3.0 && alpha <= 0.5, "alpha must lie in (1/3, 1/2]");
    check_interval(r >= 0.0 && T > 0.0, "need r >= 0 and T > 0");
    check_interval(s1 > 0.0 && s1 < 1.0, "sigma1 must lie in (0, 1)");
    check_interval(s2 >= 0.0 && s2 < alpha_tilde, "sigma2 must lie in [0, alpha_tilde)");
    check_interval(alpha_tilde > s2 && alpha_tilde < alpha, "alpha_tilde must lie in (sigma2, alpha)");
    check_interval(alpha_hat > s2 && alpha_hat < alpha &&
                       3.0 * alpha_hat - 2.0 * alpha - s2 > 0.0,
                   "alpha_hat must lie in (sigma2, alpha) with 3 alpha_hat - 2 alpha - sigma2 > 0");
    if (convergence_run) {
        check_interval(s2 > 0.5 * alpha && s2 < alpha,
                       "convergence runs need sigma2 in (alpha/2, alpha)");
        check_interval(alpha_bar > 0.8 * alpha && alpha_bar < alpha,
                       "alpha_bar must lie in (4 alpha / 5, alpha)");
        check_interval(s2 + 2.0 * alpha_bar - 2.0 * alpha >= 0.0,
                       "need sigma2 + 2 alpha_bar - 2 alpha >= 0");
        check_interval(3.0 * alpha_bar - 2.0 * alpha - s2 >= 0.0,
                       "need 3 alpha_bar - 2 alpha - sigma2 >= 0");
    }

    ModelExponents& e = m.exps;
    e.lambda0 = std::min(alpha - alpha_tilde, alpha_tilde - s2);
    e.lambda1 = std::min(1.0 - 2.0 * alpha_tilde, 1.0 - s1);
    e.lambda2 = std::min(alpha - alpha_tilde, alpha_tilde - s2);
    e.lambda3 = std::min({alpha - s2, 1.0 - 2.0 * alpha, 1.0 - s1});
    e.lambda = std::min({alpha - alpha_tilde, alpha_tilde * (alpha - s2) / alpha,
                         3.0 * alpha_tilde - 2.0 * alpha - s2});
    e.lambda_star = std::min({1.0 - s1, 1.0 - 2.0 * alpha, alpha - alpha_bar,
                              alpha_bar * (alpha - s2) / alpha,
                              3.0 * alpha_bar - 2.0 * alpha - s2});
    e.nu = std::min({1.0 - s1, 1.0 - 2.0 * alpha_hat, alpha - alpha_hat,
                     alpha_hat * (alpha - s2) / alpha, 3.0 * alpha_hat - 2.0 * alpha - s2});
    return m;
}

std::vector<SpectralVector> drift_series(const std::vector<SpectralVector>& y,
                                         const std::vector<SpectralVector>& z_delayed,
                                         const NonlinearitySpec& F, const SemigroupSpec& sg,
                                         const Grid& grid) {
    if (y.size() != static_cast<std::size_t>(grid.n) || z_delayed.size() != y.size())
        throw std::invalid_argument("drift_series: value arrays must match the grid");
    const std::int64_t n = grid.n;
    std::vector<SpectralVector> out(static_cast<std::size_t>(n));
    if (F.zero()) {
        for (auto& v : out) v = SpectralVector::zero(0);
        return out;
    }
    std::vector<SpectralVector> f(static_cast<std::size_t>(n));
    int max_mode = 0;
    for (std::int64_t t = 0; t < n; ++t) {
        f[static_cast<std::size_t>(t)] = eval_G(F, y[static_cast<std::size_t>(t)],
                                                z_delayed[static_cast<std::size_t>(t)])[0];
        max_mode = std::max(max_mode, f[static_cast<std::size_t>(t)].max_mode());
    }
    out[0] = SpectralVector::zero(max_mode);
    // per mode: D_t = e^{-c k^2 dt} D_{t-dt} + dt phi1(c k^2 dt) (F_{t-dt}+F_t)/2
    std::vector<double> decay(static_cast<std::size_t>(max_mode) + 1);
    std::vector<double> weight(static_cast<std::size_t>(max_mode) + 1);
    for (int k = 0; k <= max_mode; ++k) {
        const double x = sg.diffusivity * double(k) * double(k) * grid.dt;
        decay[static_cast<std::size_t>(k)] = std::exp(-x);
        weight[static_cast<std::size_t>(k)] = grid.dt * phi1(x);
    }
    for (std::int64_t t = 1; t < n; ++t) {
        SpectralVector cur(max_mode);
        const SpectralVector& prev = out[static_cast<std::size_t>(t - 1)];
        const SpectralVector& fa = f[static_cast<std::size_t>(t - 1)];
        const SpectralVector& fb = f[static_cast<std::size_t>(t)];
        for (int k = -max_mode; k <= max_mode; ++k) {
            const std::size_t a = static_cast<std::size_t>(std::abs(k));
            const std::complex<double> pv =
                (std::abs(k) <= prev.max_mode()) ? prev.at(k) : std::complex<double>(0.0);
            const std::complex<double> fav =
                (std::abs(k) <= fa.max_mode()) ? fa.at(k) : std::complex<double>(0.0);
            const std::complex<double> fbv =
                (std::abs(k) <= fb.max_mode()) ? fb.at(k) : std::complex<double>(0.0);
            cur.at(k) = decay[a] * pv + weight[a] * 0.5 * (fav + fbv);
        }
        out[static_cast<std::size_t>(t)] = std::move(cur);
    }
    return out;
}

SpectralVector drift_integral(const std::vector<SpectralVector>& y,
                              const std::vector<SpectralVector>& z_delayed,
                              const NonlinearitySpec& F, const SemigroupSpec& sg,
                              const Grid& grid, std::int64_t t_node) {
    if (t_node < 0 || t_node >= grid.n) throw std::out_of_range("drift_integral: node outside grid");
    return drift_series(y, z_delayed, F, sg, grid)[static_cast<std::size_t>(t_node)];
}

namespace {

// delayed-argument source for a step starting at driver-local node a:
// a slice of the trajectory for r > 0, the current iterate for r = 0
DelayedControlledPath delayed_source(const ModelSpec& model,
                                     const DelayedControlledPath& trajectory,
                                     const DelayedControlledPath& iterate, std::int64_t a_node,
                                     std::int64_t step_nodes) {
    const std::int64_t m = iterate.driver->grid.delay_steps;
    if (m == 0) return iterate;
    DelayedControlledPath q;
    q.grid = iterate.driver->grid.subgrid(a_node - m, step_nodes + 1);
    q.theta = model.theta;
    q.d = iterate.d;
    q.driver = iterate.driver;
    const std::int64_t off = (q.grid.i0) - trajectory.grid.i0;
    q.y.reserve(static_cast<std::size_t>(q.grid.n));
    q.y_prime.reserve(static_cast<std::size_t>(q.grid.n));
    for (std::int64_t k = 0; k < q.grid.n; ++k) {
        q.y.push_back(trajectory.y[static_cast<std::size_t>(off + k)]);
        q.y_prime.push_back(trajectory.y_prime[static_cast<std::size_t>(off + k)]);
    }
    return q;
}

double sup_theta_norm(const std::vector<SpectralVector>& vals, double theta) {
    double s = 0.0;
    for (const auto& v : vals) s = std::max(s, sobolev_norm(v, theta));
    return s;
}

}  // namespace

PicardStepResult picard_step(const ModelSpec& model,
                             std::shared_ptr<const DelayedRoughDriver> driver,
                             const DelayedControlledPath& trajectory, const SpectralVector& y_a,
                             std::int64_t a_node, std::int64_t step_nodes, int max_iter) {
    const std::int64_t m = driver->grid.delay_steps;
    if (m > 0 && step_nodes > m)
        throw std::invalid_argument("picard_step: step must not exceed the delay");
    if (step_nodes > 0 && double(step_nodes) * driver->grid.dt > 1.0 + 1e-12 && m > 0)
        throw std::invalid_argument("picard_step: step must not exceed min(r, 1)");
    if (a_node < driver->grid.delay_steps || a_node + step_nodes >= driver->grid.n)
        throw std::out_of_range("picard_step: step outside the solution interval");

    const Grid seg_grid = driver->grid.subgrid(a_node, step_nodes + 1);
    const int d = driver->d;

    DelayedControlledPath cur;
    cur.grid = seg_grid;
    cur.theta = model.theta;
    cur.d = d;
    cur.driver = driver;
    cur.y.resize(static_cast<std::size_t>(seg_grid.n));
    for (std::int64_t t = 0; t < seg_grid.n; ++t)
        cur.y[static_cast<std::size_t>(t)] =
            apply_semigroup(model.semigroup, y_a, double(t) * seg_grid.dt);
    cur.y_prime.assign(static_cast<std::size_t>(seg_grid.n),
                       std::vector<SpectralVector>(static_cast<std::size_t>(d),
                                                   SpectralVector::zero(0)));

    PicardStepResult res;
    std::vector<double> dists;
    const double tol = 1e-12;
    for (int it = 1; it <= max_iter; ++it) {
        const DelayedControlledPath q =
            delayed_source(model, trajectory, cur, a_node, step_nodes);
        const auto composed = compose(model.G, cur, q);
        const auto conv = convolution_series(*driver, composed, model.semigroup);
        const auto drift = drift_series(cur.y, q.y, model.F, model.semigroup, seg_grid);

        DelayedControlledPath next = cur;
        for (std::int64_t t = 0; t < seg_grid.n; ++t) {
            SpectralVector v = apply_semigroup(model.semigroup, y_a, double(t) * seg_grid.dt);
            v += drift[static_cast<std::size_t>(t)];
            v += conv[static_cast<std::size_t>(t)];
            next.y[static_cast<std::size_t>(t)] = std::move(v);
            for (int i = 0; i < d; ++i)
                next.y_prime[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] =
                    composed.comp[static_cast<std::size_t>(i)].y[static_cast<std::size_t>(t)];
        }

        const double dist =
            controlled_distance(next, cur, model.alpha_tilde, model.alpha, model.theta);
        dists.push_back(dist);
        cur = std::move(next);
        res.iterations = it;

        const double scale = 1.0 + sup_theta_norm(cur.y, model.theta);
        if (!std::isfinite(scale) || !std::isfinite(dist)) {
            // blown-up iterates turn distances into NaN, which must not read
            // as convergence
            res.status = StepStatus::not_contracting;
            break;
        }
        const bool plateau = dists.size() >= 2 && dist < 1e-9 * scale &&
                             dist >= 0.5 * dists[dists.size() - 2];
        if (dist <= tol * scale || plateau) {
            res.status = StepStatus::converged;
            break;
        }
        if (it == max_iter) res.status = StepStatus::not_contracting;
    }
    res.ratio = (dists.size() >= 2 && dists[0] > 0.0) ? dists[1] / dists[0] : 0.0;

    if (res.status == StepStatus::converged) {
        // freeze the self-derivative from the final iterate
        const DelayedControlledPath q =
            delayed_source(model, trajectory, cur, a_node, step_nodes);
        for (std::int64_t t = 0; t < seg_grid.n; ++t) {
            const auto g = eval_G(model.G, cur.y[static_cast<std::size_t>(t)],
                                  q.y[static_cast<std::size_t>(t)]);
            for (int i = 0; i < d; ++i)
                cur.y_prime[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] =
                    g[static_cast<std::size_t>(i)];
        }
    }
    res.segment = std::move(cur);
    return res;
}

SolveReport solve(const ModelSpec& model, std::shared_ptr<const DelayedRoughDriver> driver,
                  const DelayedControlledPath& phi, const SolveOptions& opts) {
    const Grid& dg = driver->grid;
    const std::int64_t m = dg.delay_steps;
    const std::int64_t n = dg.n;
    if (phi.grid.i0 != dg.i0 || phi.grid.n != m + 1)
        throw std::invalid_argument("solve: phi must live on the history grid [-r, 0]");
    if (std::abs(model.r - dg.delay()) > 1e-12 || std::abs(model.T - (dg.t_end())) > 1e-9)
        throw std::invalid_argument("solve: model (r, T) must match the driver grid");

    SolveReport rep;
    rep.driver = driver;
    rep.history = phi;

    // trajectory on [-r, a], grown step by step
    DelayedControlledPath traj;
    traj.grid = dg.subgrid(0, m + 1);
    traj.theta = model.theta;
    traj.d = driver->d;
    traj.driver = driver;
    traj.y = phi.y;
    traj.y_prime = phi.y_prime;
    if (traj.y_prime.empty())
        traj.y_prime.assign(static_cast<std::size_t>(m + 1),
                            std::vector<SpectralVector>(static_cast<std::size_t>(driver->d),
                                                        SpectralVector::zero(0)));

    std::int64_t max_step = opts.max_step_nodes;
    if (max_step <= 0) max_step = std::max<std::int64_t>(8, (n - 1 - m) / 8);
    std::int64_t rhat_nodes = n - 1 - m;  // no delay cap when r = 0
    if (m > 0) {
        rhat_nodes = m;
        const std::int64_t one_second = static_cast<std::int64_t>(std::floor(1.0 / dg.dt));
        if (one_second >= 1) rhat_nodes = std::min(rhat_nodes, one_second);
    }

    std::int64_t a = m;
    std::int64_t step = std::min({rhat_nodes, max_step, n - 1 - a});
    while (a < n - 1) {
        step = std::min(step, n - 1 - a);
        const SpectralVector y_a = traj.y[static_cast<std::size_t>(a)];
        PicardStepResult sr =
            picard_step(model, driver, traj, y_a, a, step, opts.max_iter);
        if (sr.status != StepStatus::converged) {
            if (step / 2 < 4) {
                throw std::runtime_error(
                    "solve: step underflow (no contraction above 4 grid cells); last ratio " +
                    std::to_string(sr.ratio));
            }
            step /= 2;
            continue;
        }
        rep.steps.push_back({a, a + step, sr.iterations, sr.ratio});
        rep.step_norms.push_back(controlled_norm(sr.segment, model.alpha, model.theta));
        // append, sharing the node at a; the shared node takes the segment's
        // derivative (at t = 0 this replaces phi' with G(y_0, phi_{-r}))
        traj.grid = dg.subgrid(0, a + step + 1);
        traj.y_prime[static_cast<std::size_t>(a)] = sr.segment.y_prime[0];
        for (std::int64_t k = 1; k <= step; ++k) {
            traj.y.push_back(sr.segment.y[static_cast<std::size_t>(k)]);
            traj.y_prime.push_back(sr.segment.y_prime[static_cast<std::size_t>(k)]);
        }
        a += step;
    }

    // solution on [0, T]
    DelayedControlledPath sol;
    sol.grid = dg.subgrid(m, n - m);
    sol.theta = model.theta;
    sol.d = driver->d;
    sol.driver = driver;
    sol.y.assign(traj.y.begin() + m, traj.y.end());
    sol.y_prime.assign(traj.y_prime.begin() + m, traj.y_prime.end());
    rep.solution = std::move(sol);
    rep.sup_norm = sup_theta_norm(rep.solution.y, model.theta);

    // exponential growth envelope over per-step sups
    if (rep.steps.size() >= 2) {
        std::vector<double> ts, ls;
        for (std::size_t i = 0; i < rep.steps.size(); ++i) {
            double sup = 0.0;
            for (std::int64_t k = rep.steps[i].a_node; k <= rep.steps[i].b_node; ++k)
                sup = std::max(sup, sobolev_norm(traj.y[static_cast<std::size_t>(k)], model.theta));
            ts.push_back(dg.time(rep.steps[i].b_node));
            ls.push_back(std::log(1e-300 + sup));
        }
        double mt = 0.0, ml = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            mt += ts[i];
            ml += ls[i];
        }
        mt /= double(ts.size());
        ml /= double(ts.size());
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            num += (ts[i] - mt) * (ls[i] - ml);
            den += (ts[i] - mt) * (ts[i] - mt);
        }
        const double rate = den > 0.0 ? num / den : 0.0;
        const double icept = ml - rate * mt;
        double resid = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i)
            resid = std::max(resid, std::abs(ls[i] - (icept + rate * ts[i])));
        rep.envelope_rate = rate;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (ls[i] > icept + rate * ts[i] + 3.0 * resid + 1e-9) rep.envelope_ok = false;
        }
    }
    return rep;
}

SolutionDistanceReport solution_distance(const SolveReport& a, const SolveReport& b,
                                         double alpha_hat, double alpha, double theta) {
    if (!a.solution.grid.same_nodes(b.solution.grid))
        throw std::invalid_argument("solution_distance: solutions on different grids");
    SolutionDistanceReport rep;
    rep.rho = controlled_distance(a.solution, b.solution, alpha_hat, alpha, theta);
    rep.u_history = controlled_distance(a.history, b.history, alpha_hat, alpha, theta);
    rep.u_driver = rough_distance(*a.driver, *b.driver, alpha);
    rep.u_total = rep.u_history + rep.u_driver;
    rep.m_bracket = controlled_norm(a.solution, alpha, theta).total +
                    controlled_norm(b.solution, alpha, theta).total +
                    controlled_norm(a.history, alpha, theta).total +
                    controlled_norm(b.history, alpha, theta).total +
                    driver_metrics(*a.driver, alpha).rho + driver_metrics(*b.driver, alpha).rho;
    return rep;
}

double fixed_point_residual(const ModelSpec& model, const SolveReport& report) {
    const auto driver = report.driver;
    const Grid& dg = driver->grid;
    const std::int64_t m = dg.delay_steps;

    // full trajectory phi ++ solution
    DelayedControlledPath traj;
    traj.grid = dg;
    traj.theta = model.theta;
    traj.d = driver->d;
    traj.driver = driver;
    traj.y = report.history.y;
    traj.y_prime = report.history.y_prime;
    traj.y.insert(traj.y.end(), report.solution.y.begin() + 1, report.solution.y.end());
    traj.y_prime.insert(traj.y_prime.end(), report.solution.y_prime.begin() + 1,
                        report.solution.y_prime.end());
    // the shared node at t = 0 carries the solution's derivative, as in solve()
    traj.y_prime[static_cast<std::size_t>(m)] = report.solution.y_prime.front();
    if (m == 0) {
        traj.y = report.solution.y;
        traj.y_prime = report.solution.y_prime;
    }

    // delayed source over [-r, T-r]
    DelayedControlledPath q;
    q.grid = dg.subgrid(0, dg.n - m);
    q.theta = model.theta;
    q.d = driver->d;
    q.driver = driver;
    q.y.assign(traj.y.begin(), traj.y.end() - m);
    q.y_prime.assign(traj.y_prime.begin(), traj.y_prime.end() - m);
    if (m == 0) q = report.solution;

    const auto composed = compose(model.G, report.solution, q);
    const auto conv = convolution_series(*driver, composed, model.semigroup);
    const auto drift =
        drift_series(report.solution.y, q.y, model.F, model.semigroup, report.solution.grid);

    const double scale = 1.0 + report.sup_norm;
    double worst = 0.0;
    const SpectralVector y0 = report.solution.y.front();
    for (std::int64_t t = 0; t < report.solution.grid.n; ++t) {
        SpectralVector v = apply_semigroup(model.semigroup, y0, double(t) * dg.dt);
        v += drift[static_cast<std::size_t>(t)];
        v += conv[static_cast<std::size_t>(t)];
        v -= report.solution.y[static_cast<std::size_t>(t)];
        worst = std::max(worst, sobolev_norm(v, model.theta - 2.0 * model.alpha));
    }
    return worst / scale;
}

}  // namespace drough
