/*
 * drough - delayed rough-path numerics, C interface.
 *
 * The library core is C++; this header is the stable surface for tools and
 * bindings. All functions return a status code; on failure the thread-local
 * message from drough_last_error() describes what went wrong. Handles are
 * opaque and freed with their matching _free function.
 */
#ifndef DROUGH_H
#define DROUGH_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    DROUGH_OK = 0,
    DROUGH_CHECK_FAILED = 1, /* a validation check reported failure */
    DROUGH_ERR_USAGE = 2,    /* bad arguments, config or IO */
    DROUGH_ERR_RUNTIME = 3   /* numerical failure (no contraction, divergence) */
} drough_status;

const char* drough_version(void);
const char* drough_last_error(void);

/* ---- driver handles --------------------------------------------------- */

typedef struct drough_driver drough_driver;

/* Samples / enhances a driver from the "grid" and "driver" sections of a
 * config document (same JSON the CLI takes). */
drough_status drough_driver_gen(const char* config_json, drough_driver** out);

/* "DRPD1" cache files; round trips are bitwise exact. */
drough_status drough_driver_load(const char* path, drough_driver** out);
drough_status drough_driver_save(const drough_driver* drv, const char* path);

drough_status drough_driver_info(const drough_driver* drv, int64_t* d, int64_t* n_points,
                                 int64_t* delay_steps, double* dt);

/* Max Chen-relation defects over grid triples, plain and delayed level. */
drough_status drough_driver_chen_residual(const drough_driver* drv, double* level1,
                                          double* level2);

/* sup over r <= s < t <= T of |A - A(-r)|_F / (t-s)^{2 alpha_bar}. */
drough_status drough_driver_area_gap(const drough_driver* drv, double alpha_bar, double* gap);

void drough_driver_free(drough_driver* drv);

/* ---- experiment commands ---------------------------------------------- */

/* command: gen-driver | validate | solve | converge | stability.
 * Writes output files under out_dir, returns the JSON run summary in
 * *summary_json (free with drough_string_free) and the CLI exit code
 * (0 ok, 1 check failure, 2 usage/IO) in *exit_code.
 * overrides_json may be NULL or e.g. {"seed": 7, "threads": 2}. */
drough_status drough_run(const char* command, const char* config_json, const char* out_dir,
                         const char* overrides_json, char** summary_json, int* exit_code);

void drough_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* DROUGH_H */
