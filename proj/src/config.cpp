#include "drough/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace drough {

namespace {

using nlohmann::json;

SpectralVector parse_modes(const json& j) {
    int max_mode = 0;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 3)
            throw std::invalid_argument("config: mode entries are [k, re, im]");
        max_mode = std::max(max_mode, std::abs(entry[0].get<int>()));
    }
    SpectralVector v(max_mode);
    for (const auto& entry : j)
        v.at(entry[0].get<int>()) +=
            std::complex<double>(entry[1].get<double>(), entry[2].get<double>());
    return v;
}

NonlinearitySpec parse_nonlinearity(const json& j) {
    const std::string kind = j.value("kind", "affine");
    std::vector<double> a = j.value("a", std::vector<double>{0.0});
    std::vector<double> b = j.value("b", std::vector<double>{0.0});
    if (a.size() != b.size())
        throw std::invalid_argument("config: nonlinearity a/b must have equal length");
    const double sigma = j.value("sigma", 0.0);
    if (kind == "affine") {
        std::vector<SpectralVector> offset;
        if (j.contains("offset_modes"))
            for (const auto& om : j.at("offset_modes")) offset.push_back(parse_modes(om));
        return NonlinearitySpec::affine(std::move(a), std::move(b), sigma, std::move(offset));
    }
    if (kind == "frac_laplacian_affine")
        return NonlinearitySpec::frac_laplacian(std::move(a), std::move(b), sigma);
    if (kind == "smooth_bounded")
        return NonlinearitySpec::smooth_bounded(std::move(a), std::move(b),
                                                j.value("cutoff", 8), j.value("scale", 1.0),
                                                sigma);
    throw std::invalid_argument("config: unknown nonlinearity kind " + kind);
}

}  // namespace

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::function<std::vector<double>(double)> named_deterministic_path(const std::string& name,
                                                                    int d) {
    if (name == "linear")
        return [d](double t) { return std::vector<double>(static_cast<std::size_t>(d), t); };
    if (name == "poly")
        return [d](double t) {
            std::vector<double> v(static_cast<std::size_t>(d));
            for (int c = 0; c < d; ++c) v[static_cast<std::size_t>(c)] = std::pow(t, c + 1);
            return v;
        };
    if (name == "sin")
        return [d](double t) {
            std::vector<double> v(static_cast<std::size_t>(d));
            for (int c = 0; c < d; ++c) v[static_cast<std::size_t>(c)] = std::sin(double(c + 1) * t);
            return v;
        };
    throw std::invalid_argument("config: unknown deterministic path " + name);
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: parse error: ") + e.what());
    }

    ExperimentConfig cfg;
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        cfg.grid.dt = g.value("dt", cfg.grid.dt);
        cfg.grid.solution_cells = g.value("solution_cells", cfg.grid.solution_cells);
        cfg.grid.delay_steps = g.value("delay_steps", cfg.grid.delay_steps);
    }
    if (j.contains("driver")) {
        const auto& d = j.at("driver");
        cfg.driver.flavor = flavor_from_name(d.value("flavor", "bm_stratonovich"));
        cfg.driver.hurst = d.value("hurst", 0.5);
        cfg.driver.d = d.value("d", 1);
        cfg.driver.subgrid = d.value("subgrid_factor", 8);
        cfg.driver.seed = d.value("seed", std::uint64_t{1});
        cfg.driver_cache = d.value("cache", std::string());
        if (d.contains("deterministic"))
            cfg.driver.deterministic_path =
                named_deterministic_path(d.at("deterministic").get<std::string>(), cfg.driver.d);
    }
    if (j.contains("model")) {
        const auto& m = j.at("model");
        cfg.theta = m.value("theta", cfg.theta);
        cfg.alpha = m.value("alpha", cfg.alpha);
        cfg.alpha_tilde = m.value("alpha_tilde", cfg.alpha_tilde);
        cfg.alpha_bar = m.value("alpha_bar", cfg.alpha_bar);
        cfg.alpha_hat = m.value("alpha_hat", cfg.alpha_hat);
        cfg.diffusivity = m.value("diffusivity", cfg.diffusivity);
        if (m.contains("F")) cfg.F = parse_nonlinearity(m.at("F"));
        if (m.contains("G")) cfg.G = parse_nonlinearity(m.at("G"));
    }
    if (cfg.F.a.empty()) cfg.F = NonlinearitySpec::zero_map(1);
    if (cfg.G.a.empty()) cfg.G = NonlinearitySpec::zero_map(cfg.driver.d);
    if (cfg.F.sigma <= 0.0) cfg.F.sigma = 0.5;  // H3 needs sigma1 in (0, 1)
    if (j.contains("phi")) {
        const auto& p = j.at("phi");
        cfg.phi.kind = p.value("kind", "constant");
        if (p.contains("modes")) cfg.phi.value = parse_modes(p.at("modes"));
        if (p.contains("direction_modes"))
            for (const auto& dm : p.at("direction_modes"))
                cfg.phi.directions.push_back(parse_modes(dm));
    }
    if (j.contains("solve")) {
        const auto& s = j.at("solve");
        cfg.solve_opts.max_iter = s.value("max_iter", cfg.solve_opts.max_iter);
        cfg.solve_opts.max_step_nodes =
            s.value("max_step_nodes", cfg.solve_opts.max_step_nodes);
    }
    if (j.contains("converge")) {
        const auto& c = j.at("converge");
        cfg.r_steps = c.value("r_steps", std::vector<std::int64_t>{});
        cfg.seeds = c.value("seeds", std::vector<std::uint64_t>{});
        cfg.threads = c.value("threads", 1);
    }
    if (j.contains("stability")) {
        const auto& s = j.at("stability");
        cfg.stability_kind = s.value("kind", cfg.stability_kind);
        cfg.magnitudes = s.value("magnitudes", std::vector<double>{});
        if (s.contains("direction_modes")) cfg.direction = parse_modes(s.at("direction_modes"));
        cfg.bump = s.value("bump", cfg.bump);
        cfg.seeds = s.value("seeds", cfg.seeds);
    }
    if (j.contains("validate")) {
        const auto& v = j.at("validate");
        cfg.validate_modes = v.value("modes", cfg.validate_modes);
        cfg.validate_samples = v.value("samples", cfg.validate_samples);
    }

    cfg.canonical = j.dump();  // nlohmann object keys are sorted
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(cfg.canonical)));
    cfg.hash = buf;
    return cfg;
}

}  // namespace drough
