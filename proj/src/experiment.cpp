#include "drough/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "drough/log.hpp"

namespace drough {

NonlinearitySpec swap_slots(const NonlinearitySpec& spec) {
    NonlinearitySpec out = spec;
    std::swap(out.a, out.b);
    return out;
}

DelayedRoughDriver build_driver(const DriverRequest& req, const Grid& grid) {
    switch (req.flavor) {
        case DriverFlavor::fbm_symmetric:
            return sample_fbm(req.seed, req.hurst, grid, req.d, req.subgrid);
        case DriverFlavor::bm_stratonovich:
            return sample_bm(req.seed, grid, req.d, req.subgrid);
        case DriverFlavor::bm_ito:
            return enhance_brownian_ito(sample_bm(req.seed, grid, req.d, req.subgrid));
        case DriverFlavor::deterministic:
            if (!req.deterministic_path)
                throw std::invalid_argument("build_driver: deterministic flavor needs a path");
            return enhance_deterministic(req.deterministic_path, grid, req.d, req.subgrid);
    }
    throw std::invalid_argument("build_driver: unknown flavor");
}

namespace {

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

struct FinePathFactory {
    const DelayConvergenceSetup& setup;
    std::int64_t m_max;
    std::int64_t n_cells;
    std::optional<FbmSampler> fbm;

    FinePathFactory(const DelayConvergenceSetup& s, std::int64_t m_max_, std::int64_t n_cells_)
        : setup(s), m_max(m_max_), n_cells(n_cells_) {
        if (setup.flavor == DriverFlavor::fbm_symmetric) {
            const std::int64_t nf = (m_max + n_cells) * setup.subgrid + 1;
            fbm.emplace(setup.hurst, setup.dt / double(setup.subgrid), -m_max * setup.subgrid,
                        nf);
        }
    }

    std::vector<double> fine(std::uint64_t seed) const {
        const std::int64_t nf = (m_max + n_cells) * setup.subgrid + 1;
        const double dtf = setup.dt / double(setup.subgrid);
        const std::int64_t i0f = -m_max * setup.subgrid;
        switch (setup.flavor) {
            case DriverFlavor::fbm_symmetric:
                return fbm->sample_path(seed, setup.d);
            case DriverFlavor::bm_stratonovich:
            case DriverFlavor::bm_ito:
                return sample_brownian_fine_path(seed, setup.d, dtf, i0f, nf);
            case DriverFlavor::deterministic: {
                if (!setup.deterministic_path)
                    throw std::invalid_argument("convergence: deterministic flavor needs a path");
                std::vector<double> out(static_cast<std::size_t>(nf) * setup.d);
                for (std::int64_t f = 0; f < nf; ++f) {
                    const auto v = setup.deterministic_path(double(i0f + f) * dtf);
                    for (int c = 0; c < setup.d; ++c)
                        out[static_cast<std::size_t>(f) * setup.d + c] = v[static_cast<std::size_t>(c)];
                }
                return out;
            }
        }
        throw std::invalid_argument("convergence: unknown flavor");
    }

    // slice for the grid with delay m (<= m_max) and enhance
    DelayedRoughDriver driver_for(const std::vector<double>& fine_full, std::int64_t m,
                                  std::uint64_t seed) const {
        const Grid grid = Grid::over_ir(setup.dt, m, n_cells);
        const std::int64_t skip = (m_max - m) * setup.subgrid;
        const std::int64_t nf = (grid.n - 1) * setup.subgrid + 1;
        std::vector<double> slice(fine_full.begin() + skip * setup.d,
                                  fine_full.begin() + (skip + nf) * setup.d);
        DelayedRoughDriver drv = enhance_from_fine_path(
            slice, grid, setup.d, setup.subgrid,
            setup.flavor == DriverFlavor::bm_ito ? DriverFlavor::bm_stratonovich : setup.flavor,
            seed, setup.hurst);
        if (setup.flavor == DriverFlavor::bm_ito) drv = enhance_brownian_ito(drv);
        return drv;
    }
};

template <class Fn>
void parallel_cells(std::int64_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::int64_t chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const std::int64_t lo = t * chunk, hi = std::min<std::int64_t>(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

ConvergenceTable delay_convergence_experiment(const DelayConvergenceSetup& setup) {
    if (setup.r_steps.empty() || setup.seeds.empty())
        throw std::invalid_argument("convergence: need at least one r and one seed");
    for (double b : setup.noise.a)
        if (b != 0.0)
            throw std::invalid_argument("convergence: noise must be given in the delayed slot");
    const std::int64_t n_cells = static_cast<std::int64_t>(std::llround(setup.T / setup.dt));
    if (std::abs(double(n_cells) * setup.dt - setup.T) > 1e-12)
        throw std::invalid_argument("convergence: T must be a grid multiple");
    const std::int64_t m_max = *std::max_element(setup.r_steps.begin(), setup.r_steps.end());
    for (std::int64_t m : setup.r_steps)
        if (m <= 0) throw std::invalid_argument("convergence: r entries must be positive");

    const FinePathFactory factory(setup, m_max, n_cells);
    const NonlinearitySpec noise_plain = swap_slots(setup.noise);

    struct Cell {
        double rho = 0.0;
        double h = 0.0;
        bool ok = false;
    };
    const std::int64_t n_r = static_cast<std::int64_t>(setup.r_steps.size());
    const std::int64_t n_s = static_cast<std::int64_t>(setup.seeds.size());
    std::vector<Cell> cells(static_cast<std::size_t>(n_r * n_s));

    parallel_cells(n_r * n_s, setup.threads, [&](std::int64_t idx) {
        const std::int64_t ri = idx / n_s, si = idx % n_s;
        const std::int64_t m = setup.r_steps[static_cast<std::size_t>(ri)];
        const std::uint64_t seed = setup.seeds[static_cast<std::size_t>(si)];
        Cell& cell = cells[static_cast<std::size_t>(idx)];
        try {
            const auto fine = factory.fine(seed);
            auto drv_r = std::make_shared<DelayedRoughDriver>(factory.driver_for(fine, m, seed));
            auto drv_0 = std::make_shared<DelayedRoughDriver>(factory.driver_for(fine, 0, seed));

            const ModelSpec model_r = ModelSpec::make(
                setup.semigroup, setup.drift, setup.noise, double(m) * setup.dt, setup.T,
                setup.theta, setup.alpha, setup.alpha_tilde, setup.alpha_bar, setup.alpha_hat);
            const ModelSpec model_0 = ModelSpec::make(
                setup.semigroup, setup.drift, noise_plain, 0.0, setup.T, setup.theta,
                setup.alpha, setup.alpha_tilde, setup.alpha_bar, setup.alpha_hat);

            const auto phi_r =
                setup.phi_directions.empty()
                    ? make_history_constant(setup.phi_value, drv_r->grid.subgrid(0, m + 1),
                                            drv_r, setup.theta)
                    : make_history_driver_linear(setup.phi_value, setup.phi_directions,
                                                 drv_r->grid.subgrid(0, m + 1), drv_r,
                                                 setup.theta);
            // the undelayed equation starts from the shared node value phi(0)
            const auto phi_0 = make_history_constant(
                phi_r.y.back(), drv_0->grid.subgrid(0, 1), drv_0, setup.theta);

            const SolveReport yr = solve(model_r, drv_r, phi_r, setup.solve_opts);
            const SolveReport z = solve(model_0, drv_0, phi_0, setup.solve_opts);

            cell.rho = controlled_distance(yr.solution, z.solution, setup.alpha_bar, setup.alpha,
                                           setup.theta - setup.alpha);
            cell.h = area_gap(*drv_r, setup.alpha_bar);
            cell.ok = true;
        } catch (const std::exception& e) {
            log_message(LogLevel::info, std::string("convergence cell failed: ") + e.what());
            cell.ok = false;
        }
    });

    ConvergenceTable table;
    std::vector<double> log_r, log_rho;
    for (std::int64_t ri = 0; ri < n_r; ++ri) {
        ConvergenceRow row;
        row.r = double(setup.r_steps[static_cast<std::size_t>(ri)]) * setup.dt;
        std::vector<double> rhos, hs;
        for (std::int64_t si = 0; si < n_s; ++si) {
            const Cell& c = cells[static_cast<std::size_t>(ri * n_s + si)];
            if (!c.ok) {
                ++row.failures;
                continue;
            }
            rhos.push_back(c.rho);
            hs.push_back(c.h);
        }
        row.cells = static_cast<int>(rhos.size());
        row.median_rho = median(rhos);
        row.median_h = median(hs);
        if (row.median_rho > 0.0) {
            log_r.push_back(std::log(row.r));
            log_rho.push_back(std::log(row.median_rho));
        }
        table.rows.push_back(row);
    }
    if (log_r.size() >= 2) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < log_r.size(); ++i) {
            mx += log_r[i];
            my += log_rho[i];
        }
        mx /= double(log_r.size());
        my /= double(log_r.size());
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < log_r.size(); ++i) {
            num += (log_r[i] - mx) * (log_rho[i] - my);
            den += (log_r[i] - mx) * (log_r[i] - mx);
        }
        table.fitted_slope = den > 0.0 ? num / den : 0.0;
    }
    return table;
}

std::vector<StabilityRow> stability_experiment(const StabilitySetup& setup) {
    const std::int64_t n_cells =
        static_cast<std::int64_t>(std::llround(setup.model.T / setup.dt));
    const Grid grid = Grid::over_ir(setup.dt, setup.r_steps, n_cells);
    const std::int64_t nf = (grid.n - 1) * setup.subgrid + 1;
    const double dtf = setup.dt / double(setup.subgrid);

    auto base_fine = [&]() -> std::vector<double> {
        switch (setup.flavor) {
            case DriverFlavor::fbm_symmetric: {
                FbmSampler s(setup.hurst, dtf, grid.i0 * setup.subgrid, nf);
                return s.sample_path(setup.seed, setup.d);
            }
            case DriverFlavor::bm_stratonovich:
            case DriverFlavor::bm_ito:
                return sample_brownian_fine_path(setup.seed, setup.d, dtf,
                                                 grid.i0 * setup.subgrid, nf);
            default:
                throw std::invalid_argument("stability: unsupported flavor");
        }
    }();

    auto enhance = [&](const std::vector<double>& fine) {
        DelayedRoughDriver drv = enhance_from_fine_path(
            fine, grid, setup.d, setup.subgrid,
            setup.flavor == DriverFlavor::bm_ito ? DriverFlavor::bm_stratonovich : setup.flavor,
            setup.seed, setup.hurst);
        if (setup.flavor == DriverFlavor::bm_ito) drv = enhance_brownian_ito(drv);
        return drv;
    };

    auto base_driver = std::make_shared<DelayedRoughDriver>(enhance(base_fine));
    const auto phi = make_history_constant(
        setup.phi_value, base_driver->grid.subgrid(0, setup.r_steps + 1), base_driver,
        setup.model.theta);
    const SolveReport base = solve(setup.model, base_driver, phi, setup.solve_opts);

    std::vector<StabilityRow> rows;
    for (double eps : setup.magnitudes) {
        StabilityRow row;
        row.magnitude = eps;
        if (setup.kind == StabilitySetup::Kind::initial_data) {
            SpectralVector shifted = setup.phi_value;
            shifted.axpy(eps, setup.direction);
            const auto psi = make_history_constant(
                shifted, base_driver->grid.subgrid(0, setup.r_steps + 1), base_driver,
                setup.model.theta);
            const SolveReport pert = solve(setup.model, base_driver, psi, setup.solve_opts);
            const auto dist = solution_distance(base, pert, setup.model.alpha_hat,
                                                setup.model.alpha, setup.model.theta);
            row.rho = dist.rho;
            row.u = dist.u_total;
        } else {
            if (!setup.path_bump)
                throw std::invalid_argument("stability: driver perturbation needs a bump");
            std::vector<double> fine = base_fine;
            for (std::int64_t f = 0; f < nf; ++f) {
                const double t = double(grid.i0 * setup.subgrid + f) * dtf;
                for (int c = 0; c < setup.d; ++c)
                    fine[static_cast<std::size_t>(f) * setup.d + c] +=
                        eps * setup.path_bump(t, c);
            }
            auto pert_driver = std::make_shared<DelayedRoughDriver>(enhance(fine));
            const auto psi = make_history_constant(
                setup.phi_value, pert_driver->grid.subgrid(0, setup.r_steps + 1), pert_driver,
                setup.model.theta);
            const SolveReport pert = solve(setup.model, pert_driver, psi, setup.solve_opts);
            const auto dist = solution_distance(base, pert, setup.model.alpha_hat,
                                                setup.model.alpha, setup.model.theta);
            row.rho = dist.rho;
            row.u = dist.u_total;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace drough
