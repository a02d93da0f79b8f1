/* C interface to the wireless network design toolkit.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a wnd_status; on
 * failure wnd_last_error() describes the problem (per thread). Strings
 * returned through char** are allocated by the library and released with
 * wnd_string_free. Exact numbers (scales, tolerances, violations) travel as
 * decimal or "num/den" strings.
 */
#ifndef WND_WND_H
#define WND_WND_H

#include <stddef.h>
#include <stdint.h>

#if defined(WND_BUILDING_LIBRARY)
#define WND_API __attribute__((visibility("default")))
#else
#define WND_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wnd_status {
  WND_OK = 0,
  WND_ERR_DOMAIN = 1,   /* invalid argument or precondition */
  WND_ERR_IO = 2,       /* file could not be read or written */
  WND_ERR_FORMAT = 3,   /* malformed document or number */
  WND_ERR_LIMIT = 4,    /* a size guard refused the request */
  WND_ERR_INTERNAL = 5,
  WND_ERR_NULL = 6      /* required pointer argument was NULL */
} wnd_status;

typedef struct wnd_instance wnd_instance;
typedef struct wnd_solution wnd_solution;
typedef struct wnd_report wnd_report;
typedef struct wnd_verification wnd_verification;
typedef struct wnd_refinement wnd_refinement;

WND_API const char* wnd_version(void);
WND_API const char* wnd_last_error(void);
WND_API void wnd_string_free(char* s);

/* ---- instances ---- */

typedef struct wnd_gen_params {
  size_t receivers;
  size_t transmitters;
  double area_size;
  double pathloss_exponent;
  double reference_fading_db;
  double noise_dbmw;
  double delta_db;
  double pmax_dbmw;
  double shadowing_sigma_db;
  uint64_t seed;
} wnd_gen_params;

WND_API void wnd_gen_params_default(wnd_gen_params* params);
WND_API wnd_status wnd_instance_generate(const wnd_gen_params* params, wnd_instance** out);
WND_API wnd_status wnd_instance_from_json(const char* json, wnd_instance** out);
WND_API wnd_status wnd_instance_load(const char* path, wnd_instance** out);
WND_API wnd_status wnd_instance_to_json(const wnd_instance* inst, char** out);
WND_API wnd_status wnd_instance_save(const wnd_instance* inst, const char* path);
WND_API size_t wnd_instance_num_receivers(const wnd_instance* inst);
WND_API size_t wnd_instance_num_transmitters(const wnd_instance* inst);
/* Smallest nonzero and largest fading coefficient, as doubles. */
WND_API wnd_status wnd_instance_fading_range(const wnd_instance* inst, double* lo, double* hi);
/* Metadata value (e.g. "seed"); empty string when absent. */
WND_API wnd_status wnd_instance_meta(const wnd_instance* inst, const char* key, char** out);
WND_API void wnd_instance_free(wnd_instance* inst);

/* Size of the SPAP model: variables, constraints, nonzeros. */
WND_API wnd_status wnd_spap_dimensions(const wnd_instance* inst, size_t* variables, size_t* rows,
                                       size_t* nonzeros);

/* Lossy MPS text. model is "spap" or "pap"; the PAP takes the assignment of
 * sol, or the strongest-transmitter assignment when sol is NULL. */
WND_API wnd_status wnd_export_mps(const wnd_instance* inst, const char* model, const char* scale,
                                  const wnd_solution* sol, char** out);

/* ---- solving ---- */

typedef struct wnd_solve_options {
  const char* scale; /* row scaling factor, exact string; NULL means "1" */
  double eps;
  size_t node_limit;
  double time_limit;
  int verification_mode;
} wnd_solve_options;

WND_API void wnd_solve_options_default(wnd_solve_options* options);
WND_API wnd_status wnd_solve_spap(const wnd_instance* inst, const wnd_solve_options* options,
                                  wnd_solution** out);
/* Minimum total power for the assignment of `from`, or for every receiver
 * served by its strongest transmitter when from is NULL. An infeasible LP
 * still yields a solution whose status is "infeasible". */
WND_API wnd_status wnd_solve_pap(const wnd_instance* inst, const wnd_solution* from,
                                 const wnd_solve_options* options, wnd_solution** out);
WND_API wnd_status wnd_brute_force(const wnd_instance* inst, wnd_solution** out);

/* ---- solutions ---- */

WND_API wnd_status wnd_solution_from_json(const wnd_instance* inst, const char* json,
                                          wnd_solution** out);
WND_API wnd_status wnd_solution_load(const wnd_instance* inst, const char* path,
                                     wnd_solution** out);
WND_API wnd_status wnd_solution_to_json(const wnd_solution* sol, char** out);
WND_API wnd_status wnd_solution_save(const wnd_solution* sol, const char* path);
/* "optimal", "feasible_limit", "infeasible", ... */
WND_API wnd_status wnd_solution_status(const wnd_solution* sol, char** out);
WND_API wnd_status wnd_solution_objective(const wnd_solution* sol, char** out);
WND_API size_t wnd_solution_served_count(const wnd_solution* sol);
WND_API wnd_status wnd_solution_power(const wnd_solution* sol, double* power, size_t length);
WND_API void wnd_solution_free(wnd_solution* sol);

/* ---- auditing ---- */

WND_API wnd_status wnd_audit(const wnd_instance* inst, const wnd_solution* sol,
                             const char* serve_tol, wnd_report** out);
WND_API size_t wnd_report_claimed(const wnd_report* report);
WND_API size_t wnd_report_served(const wnd_report* report);
WND_API size_t wnd_report_unserved(const wnd_report* report);
WND_API wnd_status wnd_report_max_linear_violation(const wnd_report* report, char** out);
WND_API wnd_status wnd_report_max_sir_violation(const wnd_report* report, char** out);
WND_API wnd_status wnd_report_to_json(const wnd_report* report, char** out);
/* Human-readable summary plus per-receiver rows. */
WND_API wnd_status wnd_report_table(const wnd_report* report, char** out);
WND_API void wnd_report_free(wnd_report* report);

/* ---- exact verification ---- */

WND_API wnd_status wnd_verify(const wnd_instance* inst, const wnd_solution* sol,
                              wnd_verification** out);
WND_API int wnd_verification_feasible(const wnd_verification* v);
WND_API wnd_status wnd_verification_to_json(const wnd_verification* v, char** out);
/* Copy of sol carrying the exact power vector (feasible verdicts only). */
WND_API wnd_status wnd_verification_apply(const wnd_verification* v, const wnd_solution* sol,
                                          wnd_solution** out);
WND_API void wnd_verification_free(wnd_verification* v);

/* ---- iterative refinement ---- */

/* Refines the power vector of sol on its fixed-assignment LP with SIR rows
 * scaled by scale (NULL means "1e12"). */
WND_API wnd_status wnd_refine(const wnd_instance* inst, const wnd_solution* sol, const char* tol,
                              size_t max_rounds, const char* scale, wnd_refinement** out);
WND_API int wnd_refinement_success(const wnd_refinement* r);
WND_API size_t wnd_refinement_rounds(const wnd_refinement* r);
WND_API wnd_status wnd_refinement_max_violation(const wnd_refinement* r, char** out);
WND_API wnd_status wnd_refinement_to_json(const wnd_refinement* r, char** out);
WND_API wnd_status wnd_refinement_apply(const wnd_refinement* r, const wnd_solution* sol,
                                        wnd_solution** out);
WND_API void wnd_refinement_free(wnd_refinement* r);

#ifdef __cplusplus
}
#endif

#endif /* WND_WND_H */
