// Experiment CLI. Links the C API only; all numerics live behind drough.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "drough.h"

namespace {

int run(const std::string& command, const std::string& config_path, const std::string& out_dir,
        bool have_seed, std::uint64_t seed, int threads) {
    std::ifstream in(config_path);
    if (!in) {
        std::fprintf(stderr, "error: cannot read config %s\n", config_path.c_str());
        return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string config = ss.str();

    std::string overrides = "{";
    bool first = true;
    if (have_seed) {
        overrides += "\"seed\": " + std::to_string(seed);
        first = false;
    }
    if (threads > 0) {
        if (!first) overrides += ", ";
        overrides += "\"threads\": " + std::to_string(threads);
    }
    overrides += "}";

    char* summary = nullptr;
    int exit_code = 2;
    const drough_status st = drough_run(command.c_str(), config.c_str(), out_dir.c_str(),
                                        overrides.c_str(), &summary, &exit_code);
    if (summary) {
        std::fputs(summary, stdout);
        drough_string_free(summary);
    }
    if (st == DROUGH_ERR_RUNTIME) {
        std::fprintf(stderr, "error: %s\n", drough_last_error());
        return 2;
    }
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("drough ") + drough_version() +
                 " - delay rough PDE experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int threads = 0;
    bool have_seed = false;

    const char* names[] = {"gen-driver", "validate", "solve", "converge", "stability"};
    const char* descs[] = {"sample a driver and write its cache file",
                           "run library self-checks against a config/driver",
                           "solve one model and write the solution CSV",
                           "delay-to-zero convergence experiment",
                           "initial-data / driver stability experiment"};
    for (int i = 0; i < 5; ++i) {
        auto* sub = app.add_subcommand(names[i], descs[i]);
        sub->add_option("--config", config_path, "JSON config path")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "override the config seed")
            ->each([&](const std::string&) { have_seed = true; });
        sub->add_option("--threads", threads, "experiment fan-out threads");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();
    return run(command, config_path, out_dir, have_seed, seed, threads);
}
