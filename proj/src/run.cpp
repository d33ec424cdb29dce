#include "drough/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "drough/config.hpp"
#include "drough/driver_io.hpp"
#include "drough/log.hpp"
#include "drough/rng.hpp"
#include "json.hpp"

namespace drough {

const char* kVersion = "0.1.0";

namespace {

using nlohmann::json;

void atomic_write_text(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open " + tmp);
    const std::size_t w = std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
    if (w != text.size()) {
        std::remove(tmp.c_str());
        throw std::runtime_error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("rename failed for " + path);
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string provenance_line(const ExperimentConfig& cfg) {
    return "# config_hash=" + cfg.hash + " seed=" + std::to_string(cfg.driver.seed) +
           " version=" + std::string(kVersion) + "\n";
}

Grid grid_from(const ExperimentConfig& cfg) {
    return Grid::over_ir(cfg.grid.dt, cfg.grid.delay_steps, cfg.grid.solution_cells);
}

ModelSpec model_from(const ExperimentConfig& cfg, const Grid& g) {
    SemigroupSpec sg{cfg.diffusivity};
    return ModelSpec::make(sg, cfg.F, cfg.G, g.delay(), g.t_end(), cfg.theta, cfg.alpha,
                           cfg.alpha_tilde, cfg.alpha_bar, cfg.alpha_hat);
}

DelayedControlledPath phi_from(const ExperimentConfig& cfg,
                               std::shared_ptr<const DelayedRoughDriver> drv) {
    const Grid hist = drv->grid.subgrid(0, drv->grid.delay_steps + 1);
    if (cfg.phi.kind == "constant")
        return make_history_constant(cfg.phi.value, hist, drv, cfg.theta);
    if (cfg.phi.kind == "driver_linear") {
        auto dirs = cfg.phi.directions;
        if (dirs.empty()) dirs.assign(static_cast<std::size_t>(drv->d), SpectralVector::zero(0));
        return make_history_driver_linear(cfg.phi.value, dirs, hist, drv, cfg.theta);
    }
    throw std::invalid_argument("config: unknown phi kind " + cfg.phi.kind);
}

std::shared_ptr<const DelayedRoughDriver> driver_from(const ExperimentConfig& cfg,
                                                      bool require_cache) {
    if (!cfg.driver_cache.empty()) {
        if (std::filesystem::exists(cfg.driver_cache))
            return std::make_shared<DelayedRoughDriver>(load_driver(cfg.driver_cache));
        if (require_cache)
            throw std::runtime_error("driver cache file not found: " + cfg.driver_cache);
    }
    return std::make_shared<DelayedRoughDriver>(build_driver(cfg.driver, grid_from(cfg)));
}

json run_gen_driver(const ExperimentConfig& cfg, const std::string& out_dir) {
    const DelayedRoughDriver drv = build_driver(cfg.driver, grid_from(cfg));
    const std::string path =
        cfg.driver_cache.empty() ? out_dir + "/driver.drpd" : cfg.driver_cache;
    save_driver(drv, path);
    const auto [c1, c2] = chen_residual(drv);
    json out;
    out["path"] = path;
    out["chen_residual_level1"] = c1;
    out["chen_residual_level2"] = c2;
    out["file_hash"] = [&] {
        std::FILE* f = std::fopen(path.c_str(), "rb");
        std::string bytes;
        char buf[4096];
        std::size_t got;
        while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) bytes.append(buf, got);
        std::fclose(f);
        char hex[32];
        std::snprintf(hex, sizeof hex, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(bytes)));
        return std::string(hex);
    }();
    return out;
}

json run_validate(const ExperimentConfig& cfg, bool& failed) {
    json checks = json::array();
    auto push = [&](const std::string& name, bool pass, double value, double threshold) {
        checks.push_back({{"name", name}, {"pass", pass}, {"value", value},
                          {"threshold", threshold}});
        if (!pass) failed = true;
    };

    const auto drv = driver_from(cfg, true);
    const double scale = 1.0 + std::pow(drv->max_abs_path(), 2.0);
    const auto [c1, c2] = chen_residual(*drv);
    push("chen_residual_level1", c1 <= 1e-12 * scale, c1, 1e-12 * scale);
    push("chen_residual_level2", c2 <= 1e-12 * scale, c2, 1e-12 * scale);

    // split-point invariance of the literal reconstruction
    {
        GaussianStream gs(7);
        double worst = 0.0;
        const std::int64_t n = drv->grid.n;
        for (int trial = 0; trial < 64 && n >= 3; ++trial) {
            const std::int64_t lo = static_cast<std::int64_t>(gs.uniform01() * double(n - 2));
            const std::int64_t hi =
                lo + 2 + static_cast<std::int64_t>(gs.uniform01() * double(n - lo - 2));
            const std::int64_t mid = lo + 1 + static_cast<std::int64_t>(
                                                  gs.uniform01() * double(hi - lo - 1));
            AreaMatrix whole = reconstruct_area(*drv, lo, std::min(hi, n - 1), false);
            AreaMatrix left = reconstruct_area(*drv, lo, mid, false);
            AreaMatrix right = reconstruct_area(*drv, mid, std::min(hi, n - 1), false);
            left += right;
            for (int i = 0; i < drv->d; ++i)
                for (int j = 0; j < drv->d; ++j)
                    left.at(i, j) += drv->increment(lo, mid, i) *
                                     drv->increment(mid, std::min(hi, n - 1), j);
            whole -= left;
            worst = std::max(worst, whole.frobenius());
        }
        push("reconstruct_split_invariance", worst <= 1e-13 * scale, worst, 1e-13 * scale);
    }

    // regenerate sampled drivers from the stored header and compare bitwise
    if (drv->flavor != DriverFlavor::deterministic && !cfg.driver_cache.empty()) {
        DriverRequest req;
        req.flavor = drv->flavor;
        req.hurst = drv->hurst;
        req.d = drv->d;
        req.subgrid = drv->subgrid_factor;
        req.seed = drv->seed;
        const DelayedRoughDriver fresh = build_driver(req, drv->grid);
        const bool same = fresh.path == drv->path && fresh.cell_area == drv->cell_area &&
                          fresh.cell_delayed_area == drv->cell_delayed_area;
        push("cache_consistency", same, same ? 0.0 : 1.0, 0.5);
    }

    // interpolation inequality on random vectors
    {
        GaussianStream gs(11);
        double worst = 0.0;
        for (int t = 0; t < cfg.validate_samples; ++t) {
            SpectralVector v(16);
            for (int k = -16; k <= 16; ++k) v.at(k) = {gs.next(), gs.next()};
            double th[3] = {gs.uniform01() * 4.0 - 2.0, 0.0, 0.0};
            th[1] = th[0] + gs.uniform01() * 2.0;
            th[2] = th[1] + gs.uniform01() * 2.0;
            worst = std::max(worst, interpolation_inequality_check(v, th[0], th[1], th[2]));
        }
        push("interpolation_inequality", worst <= 1.0 + 1e-10, worst, 1.0 + 1e-10);
    }

    // semigroup law and smoothing constants
    json constants;
    {
        SemigroupSpec sg{cfg.diffusivity};
        GaussianStream gs(13);
        SpectralVector v(32);
        for (int k = -32; k <= 32; ++k) v.at(k) = {gs.next(), gs.next()};
        const auto ab = apply_semigroup(sg, apply_semigroup(sg, v, 0.3), 0.7);
        const auto once = apply_semigroup(sg, v, 1.0);
        const double law = sobolev_norm(ab - once, 1.0) / (1.0 + sobolev_norm(once, 1.0));
        push("semigroup_law", law <= 1e-14, law, 1e-14);

        std::vector<double> tg;
        for (double t = 1e-4; t <= 1.0; t *= 4.0) tg.push_back(t);
        for (double sigma : {0.0, 0.25, 0.5, 1.0}) {
            const auto [a, b] = smoothing_constants(sg, cfg.theta, sigma, cfg.validate_modes, tg);
            constants["sigma_" + fmt17(sigma)] = {{"forward", a}, {"difference", b}};
            push("smoothing_finite_sigma_" + fmt17(sigma),
                 std::isfinite(a) && std::isfinite(b), std::max(a, b), 1e6);
        }
    }

    json out;
    out["checks"] = checks;
    out["constants"] = constants;
    return out;
}

json run_solve(const ExperimentConfig& cfg, const std::string& out_dir) {
    const auto drv = driver_from(cfg, true);
    const Grid g = drv->grid;
    const ModelSpec model = [&] {
        SemigroupSpec sg{cfg.diffusivity};
        return ModelSpec::make(sg, cfg.F, cfg.G, g.delay(), g.t_end(), cfg.theta, cfg.alpha,
                               cfg.alpha_tilde, cfg.alpha_bar, cfg.alpha_hat);
    }();
    const auto phi = phi_from(cfg, drv);
    const SolveReport rep = solve(model, drv, phi, cfg.solve_opts);

    std::string csv = provenance_line(cfg);
    csv += "t,norm_theta,norm_theta_minus_alpha,picard_iterations\n";
    std::vector<int> iters(static_cast<std::size_t>(rep.solution.grid.n), 0);
    for (const auto& s : rep.steps)
        for (std::int64_t k = s.a_node; k <= s.b_node; ++k)
            iters[static_cast<std::size_t>(k - g.delay_steps)] = s.iterations;
    for (std::int64_t t = 0; t < rep.solution.grid.n; ++t) {
        const auto& v = rep.solution.y[static_cast<std::size_t>(t)];
        csv += fmt17(rep.solution.grid.time(t)) + "," + fmt17(sobolev_norm(v, cfg.theta)) + "," +
               fmt17(sobolev_norm(v, cfg.theta - cfg.alpha)) + "," +
               std::to_string(iters[static_cast<std::size_t>(t)]) + "\n";
    }
    atomic_write_text(out_dir + "/solution.csv", csv);

    json out;
    out["sup_norm"] = rep.sup_norm;
    out["steps"] = json::array();
    for (const auto& s : rep.steps)
        out["steps"].push_back({{"a", g.time(s.a_node)},
                                {"b", g.time(s.b_node)},
                                {"iterations", s.iterations},
                                {"ratio", s.ratio}});
    out["envelope_ok"] = rep.envelope_ok;
    out["envelope_rate"] = rep.envelope_rate;
    out["final_norm_theta"] = sobolev_norm(rep.solution.y.back(), cfg.theta);
    return out;
}

json run_converge(const ExperimentConfig& cfg, const std::string& out_dir) {
    DelayConvergenceSetup setup;
    setup.semigroup = SemigroupSpec{cfg.diffusivity};
    setup.drift = cfg.F;
    setup.noise = cfg.G;
    setup.T = double(cfg.grid.solution_cells) * cfg.grid.dt;
    setup.theta = cfg.theta;
    setup.alpha = cfg.alpha;
    setup.alpha_tilde = cfg.alpha_tilde;
    setup.alpha_bar = cfg.alpha_bar;
    setup.alpha_hat = cfg.alpha_hat;
    setup.dt = cfg.grid.dt;
    setup.r_steps = cfg.r_steps;
    setup.seeds = cfg.seeds;
    setup.flavor = cfg.driver.flavor;
    setup.hurst = cfg.driver.hurst;
    setup.d = cfg.driver.d;
    setup.subgrid = cfg.driver.subgrid;
    setup.phi_value = cfg.phi.value;
    if (cfg.phi.kind == "driver_linear") setup.phi_directions = cfg.phi.directions;
    setup.deterministic_path = cfg.driver.deterministic_path;
    setup.solve_opts = cfg.solve_opts;
    setup.threads = cfg.threads;

    const ConvergenceTable table = delay_convergence_experiment(setup);

    std::string csv = provenance_line(cfg);
    csv += "r,median_rho,h_r,fitted_slope\n";
    for (const auto& row : table.rows)
        csv += fmt17(row.r) + "," + fmt17(row.median_rho) + "," + fmt17(row.median_h) + "," +
               fmt17(table.fitted_slope) + "\n";
    atomic_write_text(out_dir + "/converge.csv", csv);

    json out;
    out["fitted_slope"] = table.fitted_slope;
    out["rows"] = json::array();
    for (const auto& row : table.rows)
        out["rows"].push_back({{"r", row.r},
                               {"median_rho", row.median_rho},
                               {"median_h", row.median_h},
                               {"failures", row.failures},
                               {"cells", row.cells}});
    return out;
}

json run_stability(const ExperimentConfig& cfg, const std::string& out_dir) {
    StabilitySetup setup;
    const Grid g = grid_from(cfg);
    setup.model = model_from(cfg, g);
    setup.dt = cfg.grid.dt;
    setup.r_steps = cfg.grid.delay_steps;
    setup.seed = cfg.driver.seed;
    setup.flavor = cfg.driver.flavor;
    setup.hurst = cfg.driver.hurst;
    setup.d = cfg.driver.d;
    setup.subgrid = cfg.driver.subgrid;
    setup.phi_value = cfg.phi.value;
    setup.kind = cfg.stability_kind == "driver" ? StabilitySetup::Kind::driver
                                                : StabilitySetup::Kind::initial_data;
    setup.direction = cfg.direction;
    setup.magnitudes = cfg.magnitudes;
    setup.solve_opts = cfg.solve_opts;
    if (setup.kind == StabilitySetup::Kind::driver)
        setup.path_bump = [](double t, int c) { return std::sin(double(c + 1) * 6.0 * t); };

    const auto rows = stability_experiment(setup);

    std::string csv = provenance_line(cfg);
    csv += "magnitude,rho,u\n";
    for (const auto& row : rows)
        csv += fmt17(row.magnitude) + "," + fmt17(row.rho) + "," + fmt17(row.u) + "\n";
    atomic_write_text(out_dir + "/stability.csv", csv);

    json out;
    out["rows"] = json::array();
    for (const auto& row : rows)
        out["rows"].push_back({{"magnitude", row.magnitude}, {"rho", row.rho}, {"u", row.u}});
    return out;
}

}  // namespace

RunResult run_command(const std::string& command, const std::string& config_json,
                      const std::string& out_dir, const std::string& overrides_json) {
    RunResult res;
    json summary;
    try {
        ExperimentConfig cfg = parse_config(config_json);
        if (!overrides_json.empty()) {
            const json ov = json::parse(overrides_json);
            if (ov.contains("seed")) cfg.driver.seed = ov.at("seed").get<std::uint64_t>();
            if (ov.contains("threads")) cfg.threads = ov.at("threads").get<int>();
        }
        if (!out_dir.empty()) std::filesystem::create_directories(out_dir);

        summary["command"] = command;
        summary["config_hash"] = cfg.hash;
        summary["seed"] = cfg.driver.seed;
        summary["version"] = kVersion;

        bool check_failed = false;
        if (command == "gen-driver") {
            summary["result"] = run_gen_driver(cfg, out_dir);
        } else if (command == "validate") {
            summary["result"] = run_validate(cfg, check_failed);
            atomic_write_text(out_dir + "/validate.json", summary.dump(2) + "\n");
        } else if (command == "solve") {
            summary["result"] = run_solve(cfg, out_dir);
            atomic_write_text(out_dir + "/solve.json", summary.dump(2) + "\n");
        } else if (command == "converge") {
            summary["result"] = run_converge(cfg, out_dir);
            atomic_write_text(out_dir + "/converge.json", summary.dump(2) + "\n");
        } else if (command == "stability") {
            summary["result"] = run_stability(cfg, out_dir);
            atomic_write_text(out_dir + "/stability.json", summary.dump(2) + "\n");
        } else {
            throw std::invalid_argument("unknown command: " + command);
        }
        res.exit_code = check_failed ? 1 : 0;
        summary["exit_code"] = res.exit_code;
    } catch (const std::exception& e) {
        summary["error"] = e.what();
        summary["exit_code"] = 2;
        res.exit_code = 2;
        log_message(LogLevel::error, e.what());
    }
    res.summary_json = summary.dump(2) + "\n";
    return res;
}

}  // namespace drough
