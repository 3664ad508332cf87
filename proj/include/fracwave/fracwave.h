#ifndef FRACWAVE_FRACWAVE_H
#define FRACWAVE_FRACWAVE_H

/*
 * C interface of the fracwave solver: time-stepping DG (piecewise constant in
 * time, linear FEM in space) for u' - Laplace D^{-alpha} u = f on (0,1) x (0,T).
 *
 * Every call returns a status; on failure fw_last_error() describes it (per
 * thread, valid until the next failing call on that thread). Handles are
 * opaque and released with their _free function.
 */

#include <stddef.h>

#if defined(FRACWAVE_BUILDING_LIBRARY)
#define FW_API __attribute__((visibility("default")))
#else
#define FW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fw_status {
    FW_OK = 0,
    FW_ERR_ARGUMENT = 1, /* malformed input, sizes, unknown names */
    FW_ERR_DOMAIN = 2,   /* outside the mathematical domain (alpha, exponents) */
    FW_ERR_NUMERIC = 3,  /* factorization or quadrature failure */
    FW_ERR_RESOURCE = 4, /* refused by the memory/runtime guard */
    FW_ERR_IO = 5,
    FW_ERR_INTERNAL = 6
} fw_status;

typedef enum fw_history_mode { FW_HISTORY_NAIVE = 0, FW_HISTORY_FFT = 1 } fw_history_mode;
typedef enum fw_study { FW_STUDY_TEMPORAL = 0, FW_STUDY_SPATIAL = 1 } fw_study;
typedef enum fw_format { FW_FORMAT_CSV = 0, FW_FORMAT_MARKDOWN = 1 } fw_format;

FW_API const char* fw_last_error(void);
FW_API const char* fw_version(void);
FW_API const char* fw_status_name(fw_status status);

/* b_0..b_K into b (K+1 entries) and w_1..w_{K-1} into w (K-1 entries, may be NULL). K >= 2. */
FW_API fw_status fw_conv_weights(double alpha, size_t K, double* b, double* w);

/* ---- single runs ---- */

typedef struct fw_trajectory fw_trajectory;

/*
 * Solve on h = 2^-m, tau = 2^-n, T = 1. Data in text form:
 *   u0: zero | pow:P | sin:N
 *   f:  zero | const:<u0 form> | sep:<u0 form>:Q   (X(x) t^Q)
 */
FW_API fw_status fw_solve(double alpha, int m, int n, const char* u0, const char* f, fw_history_mode history,
                          fw_trajectory** out);
FW_API void fw_trajectory_free(fw_trajectory* traj);

FW_API size_t fw_trajectory_steps(const fw_trajectory* traj); /* J */
FW_API size_t fw_trajectory_width(const fw_trajectory* traj); /* interior nodes */
/* ||U_j||_{L2} for j = 0..J into norms (J+1 entries). */
FW_API fw_status fw_trajectory_norms(const fw_trajectory* traj, double* norms);
/* Nodal values of U_j (j = 0 is U_0) into values (width entries). */
FW_API fw_status fw_trajectory_values(const fw_trajectory* traj, size_t j, double* values);
/* Binary dump: little-endian f64 header (alpha, cells, J, T) then U_0..U_J. */
FW_API fw_status fw_trajectory_dump(const fw_trajectory* traj, const char* path);

/* sqrt(2) ||u0|| + 2 ||f||_{L1(0,T;L2)} */
FW_API fw_status fw_stability_bound(const char* u0, const char* f, double T, double* bound);

/* ---- convergence studies ---- */

typedef struct fw_experiment fw_experiment;
typedef struct fw_report fw_report;

/* Preset layout of experiment id (1..4); paper_scale != 0 selects h = 2^-11, tau = 2^-16 references. */
FW_API fw_status fw_experiment_preset(int id, fw_study study, int paper_scale, fw_experiment** out);
FW_API void fw_experiment_free(fw_experiment* exp);
FW_API fw_status fw_experiment_set_alphas(fw_experiment* exp, const double* alphas, size_t count);
FW_API fw_status fw_experiment_set_m(fw_experiment* exp, const int* levels, size_t count);
FW_API fw_status fw_experiment_set_n(fw_experiment* exp, const int* levels, size_t count);

typedef struct fw_run_options {
    int allow_paper_scale;  /* acknowledge the memory and runtime of paper-scale references */
    const char* cache_dir;  /* NULL: no reference cache */
    unsigned workers;       /* 0: hardware concurrency */
    fw_history_mode history;
} fw_run_options;

FW_API void fw_run_options_init(fw_run_options* options);

FW_API fw_status fw_report_create(fw_report** out);
FW_API void fw_report_free(fw_report* report);
/* Runs the study and appends its rows to report. */
FW_API fw_status fw_experiment_run(const fw_experiment* exp, const fw_run_options* options, fw_report* report);

typedef struct fw_error_row {
    double alpha;
    int m;
    int n;
    double beta;  /* NaN unless the weighted norm is used */
    double error;
    double order; /* NaN for the first refinement */
} fw_error_row;

FW_API size_t fw_report_rows(const fw_report* report);
FW_API fw_status fw_report_row(const fw_report* report, size_t index, fw_error_row* row);
/* 1 when every run of every study satisfied the stability bound. */
FW_API int fw_report_stable(const fw_report* report);
/*
 * Renders the report. Writes at most capacity bytes including the NUL and
 * stores the full length (without NUL) in *length; pass buffer = NULL to query.
 */
FW_API fw_status fw_report_render(const fw_report* report, fw_format format, char* buffer, size_t capacity,
                                  size_t* length);

/* ---- validation suites: psi | ode | fem | adjoint | stability ---- */

typedef void (*fw_log_fn)(const char* line, void* user);

/* *passed is set to 1 when every check of the suite holds. */
FW_API fw_status fw_validate(const char* suite, fw_log_fn log, void* user, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* FRACWAVE_FRACWAVE_H */
