#include "drough.h"

#include <cstring>
#include <new>
#include <string>

#include "drough/config.hpp"
#include "drough/driver_io.hpp"
#include "drough/run.hpp"

using namespace drough;

struct drough_driver {
    DelayedRoughDriver impl;
};

namespace {

thread_local std::string g_last_error;

drough_status fail(const std::string& msg, drough_status code) {
    g_last_error = msg;
    return code;
}

template <class Fn>
drough_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        return fail(e.what(), DROUGH_ERR_USAGE);
    } catch (const std::exception& e) {
        return fail(e.what(), DROUGH_ERR_RUNTIME);
    }
}

}  // namespace

extern "C" {

const char* drough_version(void) { return kVersion; }

const char* drough_last_error(void) { return g_last_error.c_str(); }

drough_status drough_driver_gen(const char* config_json, drough_driver** out) {
    if (!config_json || !out) return fail("null argument", DROUGH_ERR_USAGE);
    return guarded([&] {
        const ExperimentConfig cfg = parse_config(config_json);
        const Grid grid =
            Grid::over_ir(cfg.grid.dt, cfg.grid.delay_steps, cfg.grid.solution_cells);
        auto* handle = new drough_driver{build_driver(cfg.driver, grid)};
        *out = handle;
        return DROUGH_OK;
    });
}

drough_status drough_driver_load(const char* path, drough_driver** out) {
    if (!path || !out) return fail("null argument", DROUGH_ERR_USAGE);
    return guarded([&] {
        auto* handle = new drough_driver{load_driver(path)};
        *out = handle;
        return DROUGH_OK;
    });
}

drough_status drough_driver_save(const drough_driver* drv, const char* path) {
    if (!drv || !path) return fail("null argument", DROUGH_ERR_USAGE);
    return guarded([&] {
        save_driver(drv->impl, path);
        return DROUGH_OK;
    });
}

drough_status drough_driver_info(const drough_driver* drv, int64_t* d, int64_t* n_points,
                                 int64_t* delay_steps, double* dt) {
    if (!drv) return fail("null driver", DROUGH_ERR_USAGE);
    if (d) *d = drv->impl.d;
    if (n_points) *n_points = drv->impl.grid.n;
    if (delay_steps) *delay_steps = drv->impl.grid.delay_steps;
    if (dt) *dt = drv->impl.grid.dt;
    return DROUGH_OK;
}

drough_status drough_driver_chen_residual(const drough_driver* drv, double* level1,
                                          double* level2) {
    if (!drv) return fail("null driver", DROUGH_ERR_USAGE);
    return guarded([&] {
        const auto [c1, c2] = chen_residual(drv->impl);
        if (level1) *level1 = c1;
        if (level2) *level2 = c2;
        return DROUGH_OK;
    });
}

drough_status drough_driver_area_gap(const drough_driver* drv, double alpha_bar, double* gap) {
    if (!drv || !gap) return fail("null argument", DROUGH_ERR_USAGE);
    return guarded([&] {
        *gap = area_gap(drv->impl, alpha_bar);
        return DROUGH_OK;
    });
}

void drough_driver_free(drough_driver* drv) { delete drv; }

drough_status drough_run(const char* command, const char* config_json, const char* out_dir,
                         const char* overrides_json, char** summary_json, int* exit_code) {
    if (!command || !config_json) return fail("null argument", DROUGH_ERR_USAGE);
    return guarded([&] {
        const RunResult res = run_command(command, config_json, out_dir ? out_dir : ".",
                                          overrides_json ? overrides_json : "");
        if (summary_json) {
            char* buf = new (std::nothrow) char[res.summary_json.size() + 1];
            if (!buf) return fail("out of memory", DROUGH_ERR_RUNTIME);
            std::memcpy(buf, res.summary_json.c_str(), res.summary_json.size() + 1);
            *summary_json = buf;
        }
        if (exit_code) *exit_code = res.exit_code;
        if (res.exit_code == 1) return DROUGH_CHECK_FAILED;
        if (res.exit_code == 2) return fail("command failed (see summary)", DROUGH_ERR_USAGE);
        return DROUGH_OK;
    });
}

void drough_string_free(char* s) { delete[] s; }

}  // extern "C"
