/* C interface to the hsprop library. */
#ifndef HSP_H
#define HSP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define HSP_API __attribute__((visibility("default")))
#else
#define HSP_API
#endif

typedef enum hsp_status {
  HSP_OK = 0,
  HSP_ERR_PRECONDITION = 1,
  HSP_ERR_DOMAIN = 2,
  HSP_ERR_RESOLUTION = 3,
  HSP_ERR_SINGULARITY = 4,
  HSP_ERR_TAIL_LEAK = 5,
  HSP_ERR_TRUNCATION = 6,
  HSP_ERR_CONVERGENCE = 7,
  HSP_ERR_SEARCH_FAILURE = 8,
  HSP_ERR_UNDEFINED_RATIO = 9,
  HSP_ERR_CONFIG = 10,   /* malformed JSON or unknown experiment */
  HSP_ERR_INTERNAL = 11
} hsp_status;

/* Library version, e.g. "0.1.0". */
HSP_API const char* hsp_version(void);
/* Short lowercase name of a status code. */
HSP_API const char* hsp_status_name(hsp_status status);
/* Message of the last failed call on this thread, "" if none. */
HSP_API const char* hsp_last_error(void);
/* Nonzero for statuses caused by the caller's input. */
HSP_API int hsp_status_is_input_error(hsp_status status);

/* Complex samples on a uniform grid [-half_extent, half_extent]. */
typedef struct hsp_function hsp_function;

HSP_API hsp_status hsp_function_create(double half_extent, size_t n_points,
                                       const double* re, const double* im,
                                       hsp_function** out);
/* L2-normalized Hermite function h_n. */
HSP_API hsp_status hsp_function_hermite(int n, double half_extent,
                                        size_t n_points, hsp_function** out);
HSP_API void hsp_function_free(hsp_function* f);
HSP_API size_t hsp_function_size(const hsp_function* f);
HSP_API double hsp_function_half_extent(const hsp_function* f);
/* Copies the samples; either pointer may be NULL. */
HSP_API hsp_status hsp_function_values(const hsp_function* f, double* re,
                                       double* im);

/* exp(-itH) f by the Mehler kernel. */
HSP_API hsp_status hsp_propagate_mehler(const hsp_function* f, double t,
                                        hsp_function** out);
/* exp(-itH) f in the Hermite basis. */
HSP_API hsp_status hsp_propagate_spectral(const hsp_function* f, double t,
                                          hsp_function** out);
/* exp(-i (arctan v)/2 H) f through the free evolution. */
HSP_API hsp_status hsp_hermite_via_free(const hsp_function* f, double v,
                                        hsp_function** out);
/* Fourier-side Sobolev norm of order s. */
HSP_API hsp_status hsp_sobolev_norm(const hsp_function* f, double s,
                                    double* out);

/* int_lo^hi exp(i(a t^2 + b t^4)) dt; lo and hi may be infinite. */
HSP_API hsp_status hsp_osc_integral(double a, double b, double lo, double hi,
                                    double* re, double* im);
/* x t^2 / sqrt(4 - x^2 t^4). */
HSP_API hsp_status hsp_selector_v(double x, double t, double* out);

/* Result of one experiment. */
typedef struct hsp_run hsp_run;

/* NULL-terminated list of experiment names. */
HSP_API const char* const* hsp_experiment_names(void);
/* Runs one experiment; config_json is a JSON object (NULL means {}). */
HSP_API hsp_status hsp_run_experiment(const char* name, const char* config_json,
                                      hsp_run** out);
HSP_API void hsp_run_free(hsp_run* run);
/* Summary as pretty-printed JSON, valid until hsp_run_free. */
HSP_API const char* hsp_run_json(const hsp_run* run);
/* Nonzero when every check passed. */
HSP_API int hsp_run_passed(const hsp_run* run);
HSP_API size_t hsp_run_table_count(const hsp_run* run);
HSP_API const char* hsp_run_table_name(const hsp_run* run, size_t index);
/* Table as CSV with a header row, valid until hsp_run_free. */
HSP_API const char* hsp_run_table_csv(const hsp_run* run, size_t index);

#ifdef __cplusplus
}
#endif

#endif
