#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drough/experiment.hpp"

namespace drough {

/*
 * Declarative experiment configuration, one JSON document per run. Parsing is
 * strict about shapes but fills documented defaults; the canonical
 * serialization (sorted keys) hashes to a stable 64-bit id that every output
 * file embeds, so a run is reproducible byte for byte from its config.
 */

struct GridConfig {
    double dt = 1.0 / 256.0;
    std::int64_t solution_cells = 256;
    std::int64_t delay_steps = 64;
};

struct PhiConfig {
    std::string kind = "constant";  // constant | driver_linear
    SpectralVector value;
    std::vector<SpectralVector> directions;  // driver_linear, one per driver component
};

struct ExperimentConfig {
    GridConfig grid;
    DriverRequest driver;
    std::string driver_cache;  // empty = sample in-process

    double theta = 1.0;
    double alpha = 0.45;
    double alpha_tilde = 0.42;
    double alpha_bar = 0.42;
    double alpha_hat = 0.42;
    double diffusivity = 1.0;
    NonlinearitySpec F;
    NonlinearitySpec G;
    PhiConfig phi;
    SolveOptions solve_opts;

    // converge
    std::vector<std::int64_t> r_steps;
    std::vector<std::uint64_t> seeds;
    int threads = 1;

    // stability
    std::string stability_kind = "initial_data";
    std::vector<double> magnitudes;
    SpectralVector direction;
    std::string bump = "sin";

    // validate
    int validate_modes = 256;
    int validate_samples = 1000;

    std::string canonical;  // sorted-key serialization
    std::string hash;       // FNV-1a 64 of the canonical form, hex
};

ExperimentConfig parse_config(const std::string& json_text);

std::uint64_t fnv1a64(const std::string& s);

// named deterministic paths for configs: linear, poly, sin
std::function<std::vector<double>(double)> named_deterministic_path(const std::string& name,
                                                                    int d);

}  // namespace drough
