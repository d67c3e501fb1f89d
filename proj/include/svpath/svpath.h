/*
 * C interface to the svpath library.
 *
 * All objects are opaque handles created and released by the library. Every
 * function returns an svp_status; on failure a description of the error is
 * available from svp_last_error() on the calling thread until the next call.
 * Strings handed out by the library are released with svp_string_free().
 */
#ifndef SVPATH_SVPATH_H
#define SVPATH_SVPATH_H

#include <stddef.h>
#include <stdint.h>

#if defined(SVP_BUILDING_LIBRARY)
#define SVP_API __attribute__((visibility("default")))
#else
#define SVP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum svp_status {
  SVP_OK = 0,
  SVP_ERR_INVALID_ARGUMENT = 1,
  SVP_ERR_ZERO_VECTOR = 2,
  SVP_ERR_SINGULAR = 3,
  SVP_ERR_OVERFLOW = 4,
  SVP_ERR_INFEASIBLE = 5,
  SVP_ERR_NOT_A_VERTEX = 6,
  SVP_ERR_DEGENERATE_VERTEX = 7,
  SVP_ERR_CAP_EXCEEDED = 8,
  SVP_ERR_DISCONNECTED = 9,
  SVP_ERR_MAPPING_FAILED = 10,
  SVP_ERR_DEPENDENT_VECTORS = 11,
  SVP_ERR_NOT_ORTHOGONAL = 12,
  SVP_ERR_VERTICAL_EDGE = 13,
  SVP_ERR_LEFTWARD_EDGE = 14,
  SVP_ERR_STALLED_WALK = 15,
  SVP_ERR_STEP_LIMIT = 16,
  SVP_ERR_UNBOUNDED_SHADOW = 17,
  SVP_ERR_NON_MONOTONE_SLOPES = 18,
  SVP_ERR_RETRIES_EXHAUSTED = 19,
  SVP_ERR_TOO_SHORT = 20,
  SVP_ERR_MISSING_DELTA = 21,
  SVP_ERR_UNBOUNDED_SAMPLE = 22,
  SVP_ERR_INFEASIBLE_TOTALS = 23,
  SVP_ERR_PARSE = 24,
  SVP_ERR_SCHEMA = 25,
  SVP_ERR_IO = 26,
  SVP_ERR_INTERNAL = 99
} svp_status;

typedef enum svp_path_status {
  SVP_PATH_COMPLETED = 0,
  SVP_PATH_PERTURBED_COMPLETED = 1,
  SVP_PATH_FAILED = 2
} svp_path_status;

typedef enum svp_report_format { SVP_FORMAT_JSON = 0, SVP_FORMAT_CSV = 1 } svp_report_format;

typedef struct svp_instance svp_instance;
typedef struct svp_path svp_path;
typedef struct svp_report svp_report;

/* Flatness and sub-determinant summary of an instance. The Delta fields and
 * certificate are meaningful only when has_subdet is non-zero. */
typedef struct svp_delta_info {
  double delta;
  size_t n_bases_checked;
  int has_subdet;
  int64_t Delta;
  int64_t Delta1;
  int64_t Delta_n_minus_1;
  double bound_on_inv_delta; /* n * Delta1 * Delta_{n-1} */
  int certificate_holds;
  double certificate_slack;
} svp_delta_info;

SVP_API const char* svp_last_error(void);
SVP_API const char* svp_status_name(svp_status status);
SVP_API const char* svp_version(void);
SVP_API void svp_string_free(char* s);

/* Instances */
SVP_API svp_status svp_instance_read(const char* path, svp_instance** out);
SVP_API svp_status svp_instance_parse(const char* json_text, svp_instance** out);
SVP_API svp_status svp_instance_write(const svp_instance* inst, const char* path);
SVP_API svp_status svp_instance_generate(const char* family, size_t n, size_t m, uint64_t seed,
                                         const char* const* param_names, const double* param_values,
                                         size_t n_params, svp_instance** out);
SVP_API void svp_instance_free(svp_instance* inst);
SVP_API size_t svp_instance_rows(const svp_instance* inst);
SVP_API size_t svp_instance_dim(const svp_instance* inst);
SVP_API int svp_instance_integral(const svp_instance* inst);
/* Copies the stored endpoint (which = 1 or 2) into buf[0..n). Returns
 * SVP_ERR_INVALID_ARGUMENT when the file has no such endpoint. */
SVP_API svp_status svp_instance_endpoint(const svp_instance* inst, int which, double* buf, size_t len);

/* Shadow vertex path finding. A completed or failed path handle is returned
 * in *out whenever the endpoints were valid; a failed path also yields
 * SVP_ERR_RETRIES_EXHAUSTED. */
SVP_API svp_status svp_find_path(const svp_instance* inst, const double* x1, const double* x2, size_t n,
                                 uint64_t seed, svp_path** out);
SVP_API void svp_path_free(svp_path* path);
SVP_API svp_path_status svp_path_get_status(const svp_path* path);
SVP_API size_t svp_path_length(const svp_path* path);
SVP_API int svp_path_retries(const svp_path* path);
/* Copies up to cap slopes into buf and returns the total number of slopes. */
SVP_API size_t svp_path_slopes(const svp_path* path, double* buf, size_t cap);
SVP_API svp_status svp_path_to_json(const svp_path* path, char** out);
SVP_API svp_status svp_path_failures(const svp_path* path, char** out);

/* Flatness. compute_subdet requests the Delta table and certificate, which
 * needs an integral instance. */
SVP_API svp_status svp_delta(const svp_instance* inst, int compute_subdet, svp_delta_info* info,
                             size_t* argmin_basis, size_t basis_len);

/* Experiments */
SVP_API svp_status svp_experiment_run(const svp_instance* inst, const double* x1, const double* x2, size_t n,
                                      size_t trials, uint64_t seed, unsigned threads, svp_report** out);
SVP_API void svp_report_free(svp_report* report);
SVP_API int svp_report_passed(const svp_report* report);
/* Returns 0 and leaves *ratio untouched for an empty batch. */
SVP_API int svp_report_ratio(const svp_report* report, double* ratio);
SVP_API double svp_report_bound(const svp_report* report);
SVP_API svp_status svp_report_emit(const svp_report* report, svp_report_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* SVPATH_SVPATH_H */
